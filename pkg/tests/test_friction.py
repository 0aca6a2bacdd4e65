import math
import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sklearn.base import clone

from orgnet import FrictionModel, Graph, generate_ba, generate_hierarchical, generate_random, run_friction
from orgnet.friction import FITNESS_EPS, colordifference, friction_fitness, init_colors, step_colors
from orgnet.graph import GraphError


def naive_step(n, edges, colors):
    nb = {v: [] for v in range(n)}
    for u, v in edges:
        nb[u].append(v)
        nb[v].append(u)
    out = []
    for i in range(n):
        if not nb[i]:
            out.append(colors[i])
        else:
            out.append(colors[i] + sum(colors[j] - colors[i] for j in nb[i]) / (2 * len(nb[i])))
    return out


def test_init_colors():
    c = init_colors(Graph(1), 0)
    assert c.shape == (1,) and 0 <= c[0] <= 1
    g = Graph(121)
    assert np.array_equal(init_colors(g, 5), init_colors(g, 5))
    means = [init_colors(g, s).mean() for s in range(50)]
    assert abs(np.mean(means) - 0.5) < 0.05


def test_step_single_edge():
    g = Graph.from_edges(2, [(0, 1)])
    assert step_colors(g, np.array([0.0, 1.0])).tolist() == [0.5, 0.5]


def test_step_uniform_fixed_point():
    g = generate_random(20, 40, 0)
    c = np.full(20, 0.37)
    assert np.array_equal(step_colors(g, c), c)


def test_step_path():
    g = Graph.from_edges(3, [(0, 1), (1, 2)])
    assert step_colors(g, np.array([0.0, 0.5, 1.0])) == pytest.approx([0.25, 0.5, 0.75])


def test_isolated_node_keeps_color():
    g = Graph.from_edges(3, [(0, 1)])
    assert step_colors(g, np.array([0.2, 0.4, 0.9]))[2] == 0.9


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 30), st.floats(0.05, 0.8), st.randoms(use_true_random=False))
def test_step_matches_naive_rule(n, p, rnd):
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rnd.random() < p]
    g = Graph.from_edges(n, edges)
    colors = np.array([rnd.random() for _ in range(n)])
    assert np.max(np.abs(step_colors(g, colors) - naive_step(n, edges, list(colors))), initial=0) < 1e-12


def test_fitness_examples():
    g = Graph.from_edges(2, [(0, 1)])
    assert friction_fitness(g, np.array([0.0, 0.5]), 0) == pytest.approx(2.0)
    star = Graph.from_edges(5, [(0, i) for i in range(1, 5)])
    assert friction_fitness(star, np.array([0.5, 0.0, 1.0, 0.0, 1.0]), 0) == pytest.approx(2.0)
    assert friction_fitness(star, np.full(5, 0.3), 0) == math.sqrt(4 / FITNESS_EPS)
    with pytest.raises(GraphError):
        friction_fitness(Graph.from_edges(3, [(0, 1)]), np.zeros(3), 2)


def test_colordifference_examples():
    assert colordifference(np.full(4, 0.2), 1) == 0.0
    assert colordifference(np.array([0.0, 1.0]), 0) == 1.0
    assert colordifference(np.array([0.0, 1.0]), 1) == 1.0
    assert colordifference(np.array([0.0, 0.5, 1.0]), 1) == 0.5
    with pytest.raises(ValueError):
        colordifference(np.array([0.3]), 0)


def test_zero_steps_reports_initial_state():
    g = generate_random(30, 80, 1)
    rec = run_friction(g, 0, seed=3)
    assert np.array_equal(rec.colors, init_colors(g, 3))
    assert rec.color_min.shape == (1,)


def test_record_matches_pointwise_functions():
    g = generate_ba(40, 2, 3, 0)
    rec = run_friction(g, 5, seed=1)
    for pos, v in enumerate(rec.nodes[:10]):
        assert rec.fitness[pos] == pytest.approx(friction_fitness(g, rec.colors, v))
        assert rec.colordiff[pos] == pytest.approx(colordifference(rec.colors, pos))


def test_range_and_spread_invariants():
    for g in (generate_hierarchical(3)[0], generate_random(121, 1025, 2), generate_ba(121, 4, 5, 2)):
        for seed in range(3):
            rec = run_friction(g, 200, seed)
            assert (rec.color_min >= 0).all() and (rec.color_max <= 1).all()
            assert (np.diff(rec.color_min) >= 0).all()
            assert (np.diff(rec.color_max) <= 0).all()
            assert (np.diff(rec.spread) <= 0).all()


def test_observable_bounds():
    rec = run_friction(generate_ba(80, 3, 5, 0), 10, seed=0)
    assert (rec.fitness >= 0).all()
    assert ((rec.colordiff >= 0) & (rec.colordiff <= 1)).all()
    assert set(rec.fits) == {"fitness~degree", "fitness~clustering", "colordiff~degree", "colordiff~clustering"}


def test_colordiff_falls_with_degree():
    # high-degree nodes sit near the network mean
    rec = run_friction(generate_hierarchical(4)[0], 10, seed=0)
    assert rec.fits["colordiff~degree"].slope < 0


def test_disconnected_graph_warns():
    g = Graph.from_edges(4, [(0, 1), (2, 3)])
    with pytest.warns(RuntimeWarning):
        run_friction(g, 3, seed=0)


def test_csv_outputs(tmp_path):
    rec = run_friction(Graph.from_edges(3, [(0, 1), (1, 2)]), 2, seed=0)
    rec.to_csv(tmp_path / "t.csv", tmp_path / "s.csv")
    rows = (tmp_path / "t.csv").read_text().splitlines()
    assert rows[0] == "node,degree,clustering,fitness,colordiff"
    assert rows[1].startswith("0,1,,")  # degree-1 end: clustering undefined
    assert "fit:colordiff~degree" in (tmp_path / "s.csv").read_text()


def test_estimator_api():
    g = generate_random(50, 150, 0)
    est = FrictionModel(t_steps=7, random_state=2)
    assert clone(est).get_params() == {"t_steps": 7, "random_state": 2}
    est.fit(g)
    again = FrictionModel(t_steps=7, random_state=2).fit(g)
    assert np.array_equal(est.colors_, again.colors_)
    assert est.fitness_.shape == (50,)
    assert est.set_params(t_steps=3).t_steps == 3


def test_seeds_matter():
    g = generate_random(30, 60, 0)
    r = random.Random(0).randint(0, 10**6)
    assert not np.array_equal(run_friction(g, 3, r).colors, run_friction(g, 3, r + 1).colors)
