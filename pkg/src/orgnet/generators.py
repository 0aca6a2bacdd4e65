"""Random, preferential-attachment and hierarchical network constructions."""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from enum import Enum

import numpy as np

from ._validation import check_count, check_rng
from .graph import Graph


class NetworkKind(str, Enum):
    RANDOM = "random"
    NONHIERARCHICAL = "nonhierarchical"
    HIERARCHICAL = "hierarchical"

    @classmethod
    def parse(cls, value: "str | NetworkKind") -> "NetworkKind":
        if isinstance(value, cls):
            return value
        aliases = {"ba": cls.NONHIERARCHICAL, "scale-free": cls.NONHIERARCHICAL,
                   "non-hierarchical": cls.NONHIERARCHICAL, "er": cls.RANDOM,
                   "gnm": cls.RANDOM}
        key = str(value).strip().lower()
        return aliases.get(key) or cls(key)


def generate_random(n: int, m_edges: int, seed=None) -> Graph:
    """G(n, m): connect uniformly drawn node pairs until ``m_edges`` exist.

    Self-pairs and pairs already joined are redrawn.
    """
    n = check_count(n, "n", minimum=1)
    m_edges = check_count(m_edges, "m_edges")
    if m_edges > n * (n - 1) // 2:
        raise ValueError(f"{m_edges} edges do not fit in a simple graph on {n} nodes")
    rng = check_rng(seed)
    g = Graph(n)
    while g.edge_count < m_edges:
        u, v = (int(x) for x in rng.integers(n, size=2))
        if u != v and not g.has_edge(u, v):
            g.add_edge(u, v)
    return g


def preferential_targets(degrees, m: int, rng) -> list[int]:
    """Draw ``m`` distinct indices with probability proportional to degree.

    Sampling is with replacement; a repeat is discarded and redrawn.
    """
    deg = np.asarray(degrees, dtype=np.float64)
    total = deg.sum()
    if total <= 0:
        raise ValueError("preferential attachment needs a positive degree sum")
    if m > np.count_nonzero(deg):
        raise ValueError(f"cannot draw {m} distinct targets from {np.count_nonzero(deg)} candidates")
    cdf = np.cumsum(deg / total)
    chosen: list[int] = []
    while len(chosen) < m:
        i = int(np.searchsorted(cdf, rng.random(), side="right"))
        i = min(i, len(deg) - 1)
        if i not in chosen:
            chosen.append(i)
    return chosen


def generate_ba(n: int, m_attach: int, seed_path: int = 5, seed=None) -> Graph:
    """Barabasi-Albert growth from a path of ``seed_path`` nodes.

    Each new node links to ``m_attach`` distinct existing nodes picked by
    preferential attachment; the result has
    ``(seed_path - 1) + m_attach * (n - seed_path)`` edges.
    """
    seed_path = check_count(seed_path, "seed_path", minimum=2)
    m_attach = check_count(m_attach, "m_attach", minimum=1)
    n = check_count(n, "n", minimum=seed_path)
    if m_attach > seed_path:
        raise ValueError(f"m_attach={m_attach} exceeds the seed path size {seed_path}")
    rng = check_rng(seed)
    g = Graph(seed_path)
    for v in range(seed_path - 1):
        g.add_edge(v, v + 1)
    degrees = np.zeros(n, dtype=np.int64)
    degrees[0] = degrees[seed_path - 1] = 1
    degrees[1:seed_path - 1] = 2
    for new in range(seed_path, n):
        targets = preferential_targets(degrees[:new], m_attach, rng)
        g.add_node()
        for t in targets:
            g.add_edge(new, t)
            degrees[t] += 1
        degrees[new] = m_attach
    return g


def generate_hierarchical(levels: int, branching: int = 4, recursion: str = "copies"):
    """Deterministic hierarchical network built from nested clusters.

    ``recursion="copies"``: a level-k cluster is ``branching`` copies of a
    level-(k-1) cluster. The leader of copy 0 leads the new cluster and is
    joined to every node of the other copies; the leaders of those other
    copies are joined pairwise.

    ``recursion="leader"``: a level-k cluster is a fresh leader node plus
    ``branching - 1`` copies of a level-(k-1) cluster, wired the same way.
    With ``branching=4`` this yields 4, 13, 40, 121, ... nodes.

    Level 1 is a complete graph on ``branching`` nodes in both variants.

    Returns
    -------
    graph : Graph
    leaders : dict[int, list[int]]
        For each level >= 1, the leader of every cluster at that level.
        ``leaders[levels] == [0]``.
    """
    levels = check_count(levels, "levels", minimum=1)
    branching = check_count(branching, "branching", minimum=2)
    if recursion not in ("copies", "leader"):
        raise ValueError(f"unknown recursion {recursion!r}")
    g = Graph()
    leaders: dict[int, list[int]] = {k: [] for k in range(1, levels + 1)}

    def build(level: int) -> tuple[list[int], int]:
        if level == 0:
            v = g.add_node()
            return [v], v
        if recursion == "leader":
            top = g.add_node()
            members = [top]
            subs = [build(level - 1) for _ in range(branching - 1)]
            others = subs
        else:
            subs = [build(level - 1) for _ in range(branching)]
            members = []
            top = subs[0][1]
            others = subs[1:]
        for nodes, _ in subs:
            members.extend(nodes)
        for nodes, _ in others:
            for v in nodes:
                if not g.has_edge(top, v):
                    g.add_edge(top, v)
        sub_leaders = [lead for _, lead in others]
        for i, a in enumerate(sub_leaders):
            for b in sub_leaders[i + 1:]:
                if not g.has_edge(a, b):
                    g.add_edge(a, b)
        leaders[level].append(top)
        return members, top

    build(levels)
    return g, leaders


@dataclass
class GeneratorParams:
    """Which network to build and with what parameters."""

    kind: NetworkKind = NetworkKind.HIERARCHICAL
    n: int = 121
    m_edges: int = 1025
    m_attach: int = 4
    seed_path: int = 5
    levels: int = 4
    branching: int = 4
    recursion: str = "copies"
    rng_seed: int | None = field(default=None, repr=False)

    def __post_init__(self) -> None:
        self.kind = NetworkKind.parse(self.kind)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["kind"] = self.kind.value
        d.pop("rng_seed")
        return d


def build_network(params: GeneratorParams, seed=None) -> Graph:
    """Dispatch on ``params.kind``; ``seed`` overrides ``params.rng_seed``."""
    rng = check_rng(params.rng_seed if seed is None else seed)
    if params.kind is NetworkKind.RANDOM:
        return generate_random(params.n, params.m_edges, rng)
    if params.kind is NetworkKind.NONHIERARCHICAL:
        return generate_ba(params.n, params.m_attach, params.seed_path, rng)
    g, _ = generate_hierarchical(params.levels, params.branching, params.recursion)
    return g
