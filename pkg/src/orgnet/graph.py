"""Undirected simple graph with stable integer node ids.

Removing a node never renumbers the survivors, so per-node records collected
during a node-deletion experiment keep pointing at the same agents.
"""

from __future__ import annotations

import math
from collections import deque
from pathlib import Path
from typing import Iterable, Iterator

import numpy as np
from scipy import sparse
from scipy.sparse import csgraph

#: Distance value for node pairs with no connecting path.
UNREACHABLE = math.inf


class GraphError(ValueError):
    """Base class for structural violations."""

    code = "graph"


class SelfLoopError(GraphError):
    code = "self_loop"


class DuplicateEdgeError(GraphError):
    code = "duplicate_edge"


class UnknownNodeError(GraphError, KeyError):
    code = "unknown_node"

    def __str__(self) -> str:
        return ValueError.__str__(self)


class EmptyGraphError(GraphError):
    code = "empty_graph"


class Graph:
    """Mutable undirected simple graph.

    Node ids are handed out sequentially by :meth:`add_node` and are never
    reused, even after :meth:`remove_node`.
    """

    def __init__(self, n_nodes: int = 0) -> None:
        self._adj: dict[int, set[int]] = {}
        self._next_id = 0
        self._edge_count = 0
        for _ in range(n_nodes):
            self.add_node()

    # -- construction -----------------------------------------------------

    def add_node(self) -> int:
        node = self._next_id
        self._adj[node] = set()
        self._next_id += 1
        return node

    def add_edge(self, u: int, v: int) -> None:
        if u == v:
            raise SelfLoopError(f"self-loop on node {u}")
        self._check(u)
        self._check(v)
        if v in self._adj[u]:
            raise DuplicateEdgeError(f"edge ({u}, {v}) already present")
        self._adj[u].add(v)
        self._adj[v].add(u)
        self._edge_count += 1

    def remove_node(self, v: int) -> None:
        self._check(v)
        for u in self._adj.pop(v):
            self._adj[u].discard(v)
            self._edge_count -= 1

    def copy(self) -> "Graph":
        g = Graph.__new__(Graph)
        g._adj = {v: set(nb) for v, nb in self._adj.items()}
        g._next_id = self._next_id
        g._edge_count = self._edge_count
        return g

    @classmethod
    def from_edges(cls, n_nodes: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        g = cls(n_nodes)
        for u, v in edges:
            g.add_edge(u, v)
        return g

    # -- queries ----------------------------------------------------------

    @property
    def node_count(self) -> int:
        return len(self._adj)

    @property
    def edge_count(self) -> int:
        return self._edge_count

    def __len__(self) -> int:
        return len(self._adj)

    def __contains__(self, v: object) -> bool:
        return v in self._adj

    def __iter__(self) -> Iterator[int]:
        return iter(sorted(self._adj))

    def __repr__(self) -> str:
        return f"Graph(node_count={self.node_count}, edge_count={self.edge_count})"

    def nodes(self) -> list[int]:
        return sorted(self._adj)

    def neighbors(self, v: int) -> frozenset[int]:
        self._check(v)
        return frozenset(self._adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return u in self._adj and v in self._adj[u]

    def edges(self) -> list[tuple[int, int]]:
        """Edges as ``(u, v)`` with ``u < v``, sorted."""
        return sorted((u, v) for u, nb in self._adj.items() for v in nb if u < v)

    def degree(self, v: int) -> int:
        self._check(v)
        return len(self._adj[v])

    def degrees(self) -> dict[int, int]:
        return {v: len(self._adj[v]) for v in self.nodes()}

    def clustering_coefficient(self, v: int) -> float | None:
        """Fraction of neighbor pairs of ``v`` that are adjacent.

        Returns ``None`` when ``v`` has fewer than two neighbors.
        """
        self._check(v)
        nb = self._adj[v]
        k = len(nb)
        if k < 2:
            return None
        links = sum(len(self._adj[u] & nb) for u in nb) // 2
        return links / (k * (k - 1) / 2)

    def shortest_path_length(self, u: int, v: int) -> float:
        """BFS hop count from ``u`` to ``v``; :data:`UNREACHABLE` if none."""
        self._check(u)
        self._check(v)
        if u == v:
            return 0
        dist = {u: 0}
        queue = deque([u])
        while queue:
            x = queue.popleft()
            for y in self._adj[x]:
                if y not in dist:
                    if y == v:
                        return dist[x] + 1
                    dist[y] = dist[x] + 1
                    queue.append(y)
        return UNREACHABLE

    def components(self) -> list[list[int]]:
        """Connected components, largest first (ties by smallest member)."""
        seen: set[int] = set()
        comps = []
        for s in self.nodes():
            if s in seen:
                continue
            seen.add(s)
            comp = [s]
            queue = deque([s])
            while queue:
                x = queue.popleft()
                for y in self._adj[x]:
                    if y not in seen:
                        seen.add(y)
                        comp.append(y)
                        queue.append(y)
            comps.append(sorted(comp))
        comps.sort(key=lambda c: (-len(c), c[0]))
        return comps

    def is_connected(self) -> bool:
        self._require_nonempty()
        start = next(iter(self._adj))
        seen = {start}
        queue = deque([start])
        while queue:
            for y in self._adj[queue.popleft()]:
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        return len(seen) == len(self._adj)

    def diameter(self) -> float:
        """Largest pairwise hop distance, or :data:`UNREACHABLE` if disconnected."""
        self._require_nonempty()
        dist = self._distance_matrix()
        if np.isinf(dist).any():
            return UNREACHABLE
        return int(dist.max())

    def lcc_diameter(self) -> int:
        """Diameter of the largest connected component."""
        return self.lcc_summary()[0]

    def lcc_summary(self) -> tuple[int, int, int]:
        """``(lcc_diameter, lcc_size, n_components)`` in one pass."""
        self._require_nonempty()
        mat = self.to_sparse()
        n_comp, labels = csgraph.connected_components(mat, directed=False)
        sizes = np.bincount(labels)
        # argmax takes the lowest label on ties, i.e. the component of the smallest id
        keep = np.flatnonzero(labels == sizes.argmax())
        sub = mat[keep][:, keep]
        diam = csgraph.shortest_path(sub, method="D", unweighted=True).max()
        return int(diam), int(sizes.max()), int(n_comp)

    # -- array views ------------------------------------------------------

    def index(self) -> tuple[list[int], dict[int, int]]:
        """Sorted node ids and their position in array views."""
        nodes = self.nodes()
        return nodes, {v: i for i, v in enumerate(nodes)}

    def edge_array(self) -> np.ndarray:
        """Edges as an ``(m, 2)`` int array of positions into :meth:`nodes`."""
        _, pos = self.index()
        arr = np.array([(pos[u], pos[v]) for u, v in self.edges()], dtype=np.intp)
        return arr.reshape(-1, 2)

    def to_sparse(self) -> sparse.csr_matrix:
        n = self.node_count
        e = self.edge_array()
        rows = np.concatenate([e[:, 0], e[:, 1]])
        cols = np.concatenate([e[:, 1], e[:, 0]])
        data = np.ones(len(rows), dtype=np.float64)
        return sparse.csr_matrix((data, (rows, cols)), shape=(n, n))

    def _distance_matrix(self) -> np.ndarray:
        return csgraph.shortest_path(self.to_sparse(), method="D", unweighted=True)

    # -- helpers ----------------------------------------------------------

    def _check(self, v: int) -> None:
        if v not in self._adj:
            raise UnknownNodeError(f"unknown node {v!r}")

    def _require_nonempty(self) -> None:
        if not self._adj:
            raise EmptyGraphError("graph has no nodes")


def write_edgelist(g: Graph, path: str | Path) -> None:
    """Write one ``u v`` line per edge.

    Isolated nodes are not representable in the format; the node count is
    stored in a leading ``# nodes N`` comment line.
    """
    lines = [f"# nodes {g.node_count}"]
    lines += [f"{u} {v}" for u, v in g.edges()]
    Path(path).write_text("\n".join(lines) + "\n")


def read_edgelist(path: str | Path) -> Graph:
    """Inverse of :func:`write_edgelist`.

    Without a ``# nodes`` header, the node count is one more than the largest
    id seen.
    """
    n_nodes = None
    edges = []
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            parts = line[1:].split()
            if len(parts) == 2 and parts[0] == "nodes":
                n_nodes = int(parts[1])
            continue
        parts = line.split()
        if len(parts) != 2:
            raise GraphError(f"{path}:{lineno}: expected 'u v', got {raw!r}")
        edges.append((int(parts[0]), int(parts[1])))
    if n_nodes is None:
        n_nodes = 1 + max((max(e) for e in edges), default=-1)
    return Graph.from_edges(n_nodes, edges)
