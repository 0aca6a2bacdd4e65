"""Ecosystem dynamics over binary need / food / garbage vectors.

Every agent needs ``m_ones`` of ``n_products`` products. What it eats (its
food) is turned into garbage through one production permutation shared by
all agents, and the garbage feeds its neighbors. Needs evolve by swap
mutation with strict-improvement selection.

Vectors are stored as ``(n_agents, n_products)`` int8 arrays whose rows are
aligned with ``g.nodes()``. Products are indexed from 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np
from sklearn.base import BaseEstimator

from ._validation import check_count, check_graph, check_rng
from .graph import Graph
from .metrics import OlsFit, mean_std, ols_fit, write_csv

N_MUTANTS = 10


class SynergyMode(str, Enum):
    PROPAGATION = "propagation"
    NON_PROPAGATION = "non-propagation"

    @classmethod
    def parse(cls, value) -> "SynergyMode":
        if isinstance(value, cls):
            return value
        key = str(value).strip().lower().replace("_", "-")
        return {"prop": cls.PROPAGATION, "noprop": cls.NON_PROPAGATION,
                "nonpropagation": cls.NON_PROPAGATION}.get(key) or cls(key)


@dataclass
class SynergyState:
    """Mutable per-run state.

    ``production[k]`` is the product that product ``k`` turns into.
    """

    production: np.ndarray
    need: np.ndarray
    food: np.ndarray
    garbage: np.ndarray

    @property
    def n_products(self) -> int:
        return len(self.production)


def _adjacency(g: Graph):
    return g.to_sparse().astype(np.int64)


def init_synergy(g: Graph, n_products: int = 20, m_ones: int = 5, seed=None) -> SynergyState:
    """Random m-subset needs, food equal to need, one shared production permutation."""
    n_products = check_count(n_products, "n_products", minimum=1)
    m_ones = check_count(m_ones, "m_ones")
    if m_ones > n_products:
        raise ValueError(f"m_ones={m_ones} exceeds n_products={n_products}")
    rng = check_rng(seed)
    n = g.node_count
    need = np.zeros((n, n_products), dtype=np.int8)
    for row in need:
        row[rng.choice(n_products, size=m_ones, replace=False)] = 1
    production = rng.permutation(n_products)
    food = need.copy()
    return SynergyState(production, need, food, compute_garbage(production, food))


def compute_garbage(production: np.ndarray, food: np.ndarray) -> np.ndarray:
    """``garbage[..., production[k]] = food[..., k]``."""
    food = np.asarray(food)
    garbage = np.empty_like(food)
    garbage[..., np.asarray(production)] = food
    return garbage


def neighbor_supply(adj, garbage: np.ndarray) -> np.ndarray:
    """Per agent and product, how many neighbors hold that product as garbage."""
    return np.asarray(adj @ garbage.astype(np.int64))


def compute_food(adj, need: np.ndarray, garbage: np.ndarray, mode) -> np.ndarray:
    """Food from needs: all of them, or only those some neighbor supplies."""
    if SynergyMode.parse(mode) is SynergyMode.NON_PROPAGATION:
        return need.copy()
    return (need.astype(bool) & (neighbor_supply(adj, garbage) > 0)).astype(np.int8)


def synergy_fitness(need: np.ndarray, supply: np.ndarray) -> np.ndarray:
    """Neighbor garbage units matching the agent's needs, one per neighbor and product.

    ``supply`` comes from :func:`neighbor_supply`. Works on a single row or on
    whole matrices.
    """
    return (np.asarray(need, dtype=np.int64) * supply).sum(axis=-1)


def node_fitness(g: Graph, node: int, need_row: np.ndarray, garbages: np.ndarray) -> int:
    """Fitness of ``node`` from explicit neighbor garbage rows."""
    _, pos = g.index()
    total = 0
    for j in g.neighbors(node):
        total += int(np.dot(need_row.astype(np.int64), garbages[pos[j]]))
    return total


def _swap_gain(need: np.ndarray, supply: np.ndarray, k1: np.ndarray, k2: np.ndarray) -> np.ndarray:
    # fitness change from exchanging positions k1 and k2 of the need rows
    rows = np.arange(need.shape[0])[:, None]
    b1 = need[rows, k1].astype(np.int64)
    b2 = need[rows, k2].astype(np.int64)
    return (b2 - b1) * (supply[rows, k1] - supply[rows, k2])


def draw_swaps(rng, n_agents: int, n_products: int, n_mutants: int = N_MUTANTS):
    """Uniform ordered pairs of distinct positions, shape ``(n_agents, n_mutants)`` each."""
    if n_products < 2:
        raise ValueError("swap mutation needs at least two products")
    k1 = rng.integers(n_products, size=(n_agents, n_mutants))
    k2 = (k1 + rng.integers(1, n_products, size=(n_agents, n_mutants))) % n_products
    return k1, k2


def select_mutants(need: np.ndarray, supply: np.ndarray, k1: np.ndarray, k2: np.ndarray) -> np.ndarray:
    """Apply the best strictly-improving swap per agent; first wins ties."""
    gain = _swap_gain(need, supply, k1, k2)
    best = gain.argmax(axis=1)
    rows = np.arange(need.shape[0])
    adopt = gain[rows, best] > 0
    out = need.copy()
    r = rows[adopt]
    a, b = k1[r, best[adopt]], k2[r, best[adopt]]
    out[r, a], out[r, b] = need[r, b], need[r, a]
    return out


def mutate_select(need_row: np.ndarray, supply_row: np.ndarray, seed=None,
                  n_mutants: int = N_MUTANTS) -> np.ndarray:
    """Single-agent variation and selection against fixed neighbor supply."""
    rng = check_rng(seed)
    need_row = np.asarray(need_row)
    k1, k2 = draw_swaps(rng, 1, need_row.shape[-1], n_mutants)
    return select_mutants(need_row[None, :], np.asarray(supply_row)[None, :], k1, k2)[0]


@dataclass
class SynergyRecord:
    mode: SynergyMode
    nodes: list[int]
    degree: np.ndarray
    clustering: np.ndarray
    fitness_history: np.ndarray  # (t_steps + 1, n_agents)
    need_initial: np.ndarray
    need_final: np.ndarray
    popcount_ok: bool = True
    fits: dict[str, OlsFit | None] = field(default_factory=dict)
    dfitness_mean: float = math.nan
    dfitness_std: float | None = None

    @property
    def dfitness(self) -> np.ndarray:
        return self.fitness_history[-1] - self.fitness_history[0]

    @property
    def need_hamming(self) -> np.ndarray:
        return (self.need_initial != self.need_final).sum(axis=1)

    @property
    def mean_fitness(self) -> np.ndarray:
        return self.fitness_history.mean(axis=1)

    def trace_csv(self, path) -> None:
        write_csv(path, ["step", "mean_fitness"], enumerate(self.mean_fitness))

    def table_csv(self, path) -> None:
        h = self.fitness_history
        rows = (
            [self.nodes[i], int(self.degree[i]),
             None if np.isnan(self.clustering[i]) else float(self.clustering[i]),
             int(h[0, i]), int(h[-1, i]), int(h[-1, i] - h[0, i]), int(self.need_hamming[i])]
            for i in range(len(self.nodes))
        )
        write_csv(path, ["node", "degree", "clustering", "fitness_initial", "fitness_final",
                         "dfitness", "need_hamming"], rows)

    def summary_csv(self, path) -> None:
        rows = [["dfitness", self.dfitness_mean, self.dfitness_std]]
        rows += [[f"fit:{name}"] + (f.row() if f else []) for name, f in self.fits.items()]
        write_csv(path, ["quantity", "mean_or_slope", "std_or_ci_lo", "ci_hi", "intercept", "n"], rows)


def _safe_fit(x, y):
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    mask = ~(np.isnan(x) | np.isnan(y))
    x, y = x[mask], y[mask]
    if len(x) < 3 or np.ptp(x) == 0:
        return None
    return ols_fit(x, y)


def run_synergy(g: Graph, t_steps: int = 30, mode="propagation", n_products: int = 20,
                m_ones: int = 5, seed=None, production=None) -> SynergyRecord:
    """Synchronous rounds of food, garbage, fitness and mutation for every agent.

    ``fitness_history[0]`` is the fitness of the initial state and
    ``fitness_history[t]`` the fitness after ``t`` rounds of mutation. All
    agents in a round see the garbage produced at the end of the previous
    round. In propagation mode the first round eats the full need.

    ``production`` overrides the random permutation (e.g. the identity).
    """
    check_graph(g)
    t_steps = check_count(t_steps, "t_steps")
    mode = SynergyMode.parse(mode)
    rng = check_rng(seed)
    state = init_synergy(g, n_products, m_ones, rng)
    if production is not None:
        production = np.asarray(production)
        if sorted(production.tolist()) != list(range(n_products)):
            raise ValueError("production must be a permutation of range(n_products)")
        state.production = production
        state.garbage = compute_garbage(production, state.food)
    adj = _adjacency(g)
    nodes = g.nodes()
    n = len(nodes)
    deg = np.asarray(adj.sum(axis=1)).ravel()
    need0 = state.need.copy()
    history = np.zeros((t_steps + 1, n), dtype=np.int64)
    popcount_ok = True

    prev_garbage = state.garbage
    for t in range(t_steps + 1):
        if t > 0 and mode is SynergyMode.PROPAGATION:
            state.food = compute_food(adj, state.need, prev_garbage, mode)
        else:
            state.food = state.need.copy()
        state.garbage = compute_garbage(state.production, state.food)
        supply = neighbor_supply(adj, state.garbage)
        history[t] = synergy_fitness(state.need, supply)
        if t == t_steps:
            break
        if n_products >= 2:
            k1, k2 = draw_swaps(rng, n, n_products)
            state.need = select_mutants(state.need, supply, k1, k2)
        popcount_ok &= bool((state.need.sum(axis=1) == m_ones).all())
        prev_garbage = state.garbage

    clustering = np.array([np.nan if c is None else c for c in map(g.clustering_coefficient, nodes)])
    rec = SynergyRecord(mode, nodes, deg, clustering, history, need0, state.need.copy(), popcount_ok)
    d = rec.dfitness
    rec.fits = {
        "dfitness~degree": _safe_fit(deg, d),
        "dfitness~clustering": _safe_fit(clustering, d),
        "need_hamming~degree": _safe_fit(deg, rec.need_hamming),
        "need_hamming~clustering": _safe_fit(clustering, rec.need_hamming),
    }
    rec.dfitness_mean, rec.dfitness_std = mean_std(d)
    return rec


class SynergyModel(BaseEstimator):
    """Estimator interface to :func:`run_synergy`.

    Attributes
    ----------
    record_ : SynergyRecord
    fitness_history_ : ndarray of shape (t_steps + 1, n_agents)
    dfitness_ : ndarray
    need_ : ndarray
        Final need vectors.
    """

    def __init__(self, mode="propagation", t_steps=30, n_products=20, m_ones=5, random_state=None):
        self.mode = mode
        self.t_steps = t_steps
        self.n_products = n_products
        self.m_ones = m_ones
        self.random_state = random_state

    def fit(self, g, y=None):
        self.record_ = run_synergy(g, self.t_steps, self.mode, self.n_products, self.m_ones,
                                   self.random_state)
        self.fitness_history_ = self.record_.fitness_history
        self.dfitness_ = self.record_.dfitness
        self.need_ = self.record_.need_final
        return self
