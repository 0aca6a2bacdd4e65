import math
import random

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from orgnet import (
    UNREACHABLE,
    DuplicateEdgeError,
    EmptyGraphError,
    Graph,
    SelfLoopError,
    UnknownNodeError,
    read_edgelist,
    write_edgelist,
)


def path_graph(n):
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def test_add_node_ids_are_sequential():
    g = Graph()
    assert g.add_node() == 0
    assert g.node_count == 1
    g = Graph(3)
    assert g.add_node() == 3
    big = Graph(120)
    big.add_edge(0, 1)
    assert big.add_node() == 120
    assert big.edge_count == 1


def test_add_edge_updates_both_ends():
    g = Graph(2)
    g.add_edge(0, 1)
    assert g.edge_count == 1
    assert g.degree(0) == g.degree(1) == 1
    assert g.has_edge(1, 0)


@pytest.mark.parametrize("edge, exc", [
    ((0, 0), SelfLoopError),
    ((0, 7), UnknownNodeError),
])
def test_add_edge_rejections(edge, exc):
    g = Graph(2)
    with pytest.raises(exc):
        g.add_edge(*edge)


def test_duplicate_edge_rejected_on_second_call():
    g = Graph(2)
    g.add_edge(0, 1)
    with pytest.raises(DuplicateEdgeError):
        g.add_edge(1, 0)
    assert g.edge_count == 1


def test_error_codes_are_distinct():
    codes = {SelfLoopError.code, DuplicateEdgeError.code, UnknownNodeError.code}
    assert len(codes) == 3


def test_degree(star5, k4):
    assert star5.degree(0) == 4
    assert Graph(1).degree(0) == 0
    assert all(k4.degree(v) == 3 for v in k4)
    with pytest.raises(UnknownNodeError):
        k4.degree(9)


def test_clustering_coefficient(star5, k4):
    assert k4.clustering_coefficient(2) == 1.0
    assert star5.clustering_coefficient(0) == 0.0
    assert star5.clustering_coefficient(1) is None
    assert Graph(1).clustering_coefficient(0) is None


def test_shortest_path_length():
    g = path_graph(4)
    assert g.shortest_path_length(2, 2) == 0
    assert g.shortest_path_length(0, 3) == 3
    two = Graph.from_edges(4, [(0, 1), (2, 3)])
    assert two.shortest_path_length(0, 3) == UNREACHABLE


def test_diameter(k4):
    assert k4.diameter() == 1
    assert path_graph(5).diameter() == 4
    assert Graph.from_edges(4, [(0, 1), (2, 3)]).diameter() == UNREACHABLE
    with pytest.raises(EmptyGraphError):
        Graph().diameter()


def test_is_connected(k4):
    assert k4.is_connected()
    k4.add_node()
    assert not k4.is_connected()
    assert Graph(1).is_connected()
    with pytest.raises(EmptyGraphError):
        Graph().is_connected()


def test_remove_node(star5, k4):
    star5.remove_node(0)
    assert star5.edge_count == 0
    assert all(star5.degree(v) == 0 for v in star5)
    k4.remove_node(1)
    assert k4.nodes() == [0, 2, 3]
    assert k4.edge_count == 3
    assert k4.diameter() == 1
    g = Graph(3)
    g.add_edge(0, 1)
    g.remove_node(2)
    assert g.edge_count == 1
    with pytest.raises(UnknownNodeError):
        g.remove_node(2)


def test_ids_stay_stable_after_removal():
    g = path_graph(5)
    g.remove_node(2)
    assert g.nodes() == [0, 1, 3, 4]
    assert g.add_node() == 5
    assert g.has_edge(3, 4)


def test_lcc_summary_picks_largest_component():
    # triangle + 5-path: lcc is the path, diameter 4
    g = Graph.from_edges(8, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (5, 6), (6, 7)])
    assert g.lcc_summary() == (4, 5, 2)


def test_copy_is_independent(k4):
    c = k4.copy()
    c.remove_node(0)
    assert k4.node_count == 4 and c.node_count == 3


def test_matches_brute_force_oracles(corpus):
    for n, edges in corpus:
        g = Graph.from_edges(n, edges)
        assert [g.degree(v) for v in range(n)] == oracles.degrees(n, edges)
        assert [g.clustering_coefficient(v) for v in range(n)] == oracles.clustering(n, edges)
        assert g.diameter() == oracles.diameter(n, edges)
        dist = oracles.all_pairs_bfs(n, edges)
        for u in range(0, n, 3):
            for v in range(n):
                assert g.shortest_path_length(u, v) == dist[u].get(v, math.inf)


def test_matches_networkx(corpus):
    for n, edges in corpus:
        g = Graph.from_edges(n, edges)
        G = nx.Graph()
        G.add_nodes_from(range(n))
        G.add_edges_from(edges)
        cc = nx.clustering(G)
        for v in range(n):
            mine = g.clustering_coefficient(v)
            assert (mine or 0.0) == pytest.approx(cc[v])
        assert g.is_connected() == nx.is_connected(G)
        if nx.is_connected(G):
            assert g.diameter() == nx.diameter(G)


@st.composite
def operations(draw):
    n = draw(st.integers(1, 12))
    ops = draw(st.lists(st.tuples(st.sampled_from(["edge", "node", "remove"]),
                                  st.integers(0, 15), st.integers(0, 15)), max_size=40))
    return n, ops


@settings(max_examples=150, deadline=None)
@given(operations())
def test_symmetry_and_edge_count_survive_any_sequence(case):
    n, ops = case
    g = Graph(n)
    for op, a, b in ops:
        try:
            if op == "edge":
                g.add_edge(a, b)
            elif op == "node":
                g.add_node()
            else:
                g.remove_node(a)
        except (SelfLoopError, DuplicateEdgeError, UnknownNodeError):
            pass
    adj = {v: g.neighbors(v) for v in g}
    for v, nb in adj.items():
        assert v not in nb
        for u in nb:
            assert v in adj[u]
    assert g.edge_count * 2 == sum(len(nb) for nb in adj.values())


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 20), st.floats(0.1, 0.9), st.randoms(use_true_random=False))
def test_clustering_invariant_under_relabeling(n, p, rnd):
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rnd.random() < p]
    perm = list(range(n))
    rnd.shuffle(perm)
    g = Graph.from_edges(n, edges)
    h = Graph.from_edges(n, [(perm[u], perm[v]) for u, v in edges])
    for v in range(n):
        assert g.clustering_coefficient(v) == h.clustering_coefficient(perm[v])


def test_edgelist_roundtrip(tmp_path):
    rng = random.Random(5)
    g = Graph.from_edges(12, [(u, v) for u in range(12) for v in range(u + 1, 12) if rng.random() < 0.3])
    g.add_node()  # isolated node survives via the header
    write_edgelist(g, tmp_path / "g.txt")
    h = read_edgelist(tmp_path / "g.txt")
    assert h.node_count == g.node_count
    assert h.edges() == g.edges()


def test_edgelist_without_header(tmp_path):
    (tmp_path / "g.txt").write_text("0 1\n1   2\n\n2 3\n")
    g = read_edgelist(tmp_path / "g.txt")
    assert g.node_count == 4 and g.edge_count == 3
