"""Alignment dynamics: every node pulls its color halfway to its neighbors' mean.

Colors are stored as float arrays aligned with ``g.nodes()``.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np
from sklearn.base import BaseEstimator

from ._validation import check_count, check_graph, check_rng
from .graph import Graph, GraphError
from .metrics import OlsFit, mean_std, ols_fit, write_csv, write_fits_csv

#: Floor on the squared-difference sum in the fitness denominator.
FITNESS_EPS = 1e-12


def _neighbor_sum(edges: np.ndarray, values: np.ndarray) -> np.ndarray:
    n = len(values)
    u, v = edges[:, 0], edges[:, 1]
    return (np.bincount(u, weights=values[v], minlength=n)
            + np.bincount(v, weights=values[u], minlength=n))


def _degrees(edges: np.ndarray, n: int) -> np.ndarray:
    return np.bincount(edges.ravel(), minlength=n)


def init_colors(g: Graph, seed=None) -> np.ndarray:
    return check_rng(seed).random(g.node_count)


def step_colors(g: Graph, colors: np.ndarray) -> np.ndarray:
    """One synchronous update; isolated nodes keep their color."""
    edges = g.edge_array()
    return _step(edges, _degrees(edges, g.node_count), np.asarray(colors, dtype=np.float64))


def _step(edges, deg, colors):
    total = _neighbor_sum(edges, colors)
    out = colors.copy()
    has = deg > 0
    out[has] = 0.5 * (colors[has] + total[has] / deg[has])
    # rounding in the neighbor mean can leave the convex hull by an ulp;
    # clamping to it keeps the global min/max monotone in floating point
    lo = colors.copy()
    hi = colors.copy()
    u, v = edges[:, 0], edges[:, 1]
    np.minimum.at(lo, u, colors[v])
    np.minimum.at(lo, v, colors[u])
    np.maximum.at(hi, u, colors[v])
    np.maximum.at(hi, v, colors[u])
    return np.clip(out, lo, hi)


def _fitness_all(edges, deg, colors):
    d2 = (colors[edges[:, 0]] - colors[edges[:, 1]]) ** 2
    n = len(colors)
    sq = np.bincount(edges[:, 0], weights=d2, minlength=n) + np.bincount(edges[:, 1], weights=d2, minlength=n)
    fit = np.full(n, np.nan)
    has = deg > 0
    fit[has] = np.sqrt(deg[has] / np.maximum(sq[has], FITNESS_EPS))
    return fit


def friction_fitness(g: Graph, colors: np.ndarray, node: int) -> float:
    """``sqrt(k / sum_j (c_node - c_j)^2)`` over the ``k`` neighbors of ``node``."""
    nodes, pos = g.index()
    nb = g.neighbors(node)
    if not nb:
        raise GraphError(f"fitness undefined for isolated node {node}")
    c = colors[pos[node]]
    sq = sum((c - colors[pos[j]]) ** 2 for j in nb)
    return math.sqrt(len(nb) / max(sq, FITNESS_EPS))


def colordifference(colors: np.ndarray, i: int) -> float:
    """Mean absolute color gap between position ``i`` and every other position."""
    colors = np.asarray(colors, dtype=np.float64)
    if len(colors) < 2:
        raise ValueError("colordifference needs at least two nodes")
    return float(np.abs(colors - colors[i]).sum() / (len(colors) - 1))


def _colordifference_all(colors):
    n = len(colors)
    return np.abs(colors[:, None] - colors[None, :]).sum(axis=1) / (n - 1)


@dataclass
class FrictionRecord:
    nodes: list[int]
    degree: np.ndarray
    clustering: np.ndarray
    colors: np.ndarray
    fitness: np.ndarray
    colordiff: np.ndarray
    color_min: np.ndarray
    color_max: np.ndarray
    fits: dict[str, OlsFit | None] = field(default_factory=dict)
    fitness_mean: float = math.nan
    fitness_std: float | None = None
    colordiff_mean: float = math.nan
    colordiff_std: float | None = None

    @property
    def spread(self) -> np.ndarray:
        return self.color_max - self.color_min

    def node_table(self):
        for row in zip(self.nodes, self.degree, self.clustering, self.fitness, self.colordiff):
            yield [int(row[0]), int(row[1])] + [None if np.isnan(x) else float(x) for x in row[2:]]

    def to_csv(self, table_path, summary_path=None) -> None:
        write_csv(table_path, ["node", "degree", "clustering", "fitness", "colordiff"], self.node_table())
        if summary_path is not None:
            self.summary_csv(summary_path)

    def summary_csv(self, path) -> None:
        rows = [["fitness", self.fitness_mean, self.fitness_std],
                ["colordiff", self.colordiff_mean, self.colordiff_std]]
        rows += [[f"fit:{name}"] + (f.row() if f else []) for name, f in self.fits.items()]
        write_csv(path, ["quantity", "mean_or_slope", "std_or_ci_lo", "ci_hi", "intercept", "n"], rows)


def _safe_fit(x, y):
    mask = ~(np.isnan(x) | np.isnan(y))
    x, y = x[mask], y[mask]
    if len(x) < 3 or np.ptp(x) == 0:
        return None
    return ols_fit(x, y)


def run_friction(g: Graph, t_steps: int = 10, seed=None) -> FrictionRecord:
    """Random initial colors, ``t_steps`` synchronous updates, final-state observables."""
    check_graph(g, min_nodes=2)
    t_steps = check_count(t_steps, "t_steps")
    if not g.is_connected():
        warnings.warn("friction run on a disconnected graph", RuntimeWarning, stacklevel=2)
    nodes = g.nodes()
    edges = g.edge_array()
    deg = _degrees(edges, len(nodes))
    colors = init_colors(g, seed)
    cmin = np.empty(t_steps + 1)
    cmax = np.empty(t_steps + 1)
    cmin[0], cmax[0] = colors.min(), colors.max()
    for t in range(1, t_steps + 1):
        colors = _step(edges, deg, colors)
        cmin[t], cmax[t] = colors.min(), colors.max()

    clustering = np.array([np.nan if c is None else c
                           for c in map(g.clustering_coefficient, nodes)])
    fitness = _fitness_all(edges, deg, colors)
    cdiff = _colordifference_all(colors)
    degf = deg.astype(np.float64)
    rec = FrictionRecord(nodes, deg, clustering, colors, fitness, cdiff, cmin, cmax)
    rec.fits = {
        "fitness~degree": _safe_fit(degf, fitness),
        "fitness~clustering": _safe_fit(clustering, fitness),
        "colordiff~degree": _safe_fit(degf, cdiff),
        "colordiff~clustering": _safe_fit(clustering, cdiff),
    }
    rec.fitness_mean, rec.fitness_std = mean_std(fitness[deg > 0])
    rec.colordiff_mean, rec.colordiff_std = mean_std(cdiff)
    return rec


class FrictionModel(BaseEstimator):
    """Estimator interface to :func:`run_friction`.

    Attributes
    ----------
    record_ : FrictionRecord
    colors_ : ndarray
        Final colors, aligned with ``g.nodes()``.
    fitness_, colordiff_ : ndarray
    fits_ : dict of OlsFit
    """

    def __init__(self, t_steps=10, random_state=None):
        self.t_steps = t_steps
        self.random_state = random_state

    def fit(self, g, y=None):
        self.record_ = run_friction(g, self.t_steps, self.random_state)
        self.colors_ = self.record_.colors
        self.fitness_ = self.record_.fitness
        self.colordiff_ = self.record_.colordiff
        self.fits_ = self.record_.fits
        return self


__all__ = ["init_colors", "step_colors", "friction_fitness", "colordifference",
           "run_friction", "FrictionRecord", "FrictionModel", "write_fits_csv"]
