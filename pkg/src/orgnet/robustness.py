"""Node-removal experiments: random failure and highest-degree attack."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

import numpy as np
from sklearn.base import BaseEstimator

from ._validation import check_count, check_graph, check_rng
from .graph import Graph
from .metrics import write_csv


class RemovalMode(str, Enum):
    FAILURE = "failure"
    ATTACK = "attack"


@dataclass(frozen=True)
class RemovalStep:
    step: int
    removed_node: int
    lcc_diameter: int
    connected: bool
    lcc_size: int
    survivors: int


@dataclass
class RobustnessSeries:
    mode: RemovalMode
    initial_diameter: int
    initial_size: int
    steps: list[RemovalStep] = field(default_factory=list)

    @property
    def diameters(self) -> np.ndarray:
        return np.array([s.lcc_diameter for s in self.steps], dtype=np.int64)

    def first_increase_step(self) -> int | None:
        """First step whose LCC diameter exceeds the starting diameter."""
        for s in self.steps:
            if s.lcc_diameter > self.initial_diameter:
                return s.step
        return None

    def first_change_step(self) -> int | None:
        for s in self.steps:
            if s.lcc_diameter != self.initial_diameter:
                return s.step
        return None

    def disconnect_step(self) -> int | None:
        for s in self.steps:
            if not s.connected:
                return s.step
        return None

    def fall_apart_step(self) -> int | None:
        """First step that is disconnected or whose LCC holds at most half the survivors."""
        for s in self.steps:
            if not s.connected or 2 * s.lcc_size <= s.survivors:
                return s.step
        return None

    def to_csv(self, path) -> None:
        write_csv(path, ["step", "removed_node", "lcc_diameter", "connected"],
                  ((s.step, s.removed_node, s.lcc_diameter, s.connected) for s in self.steps))


def _pick_attack_target(g: Graph) -> int:
    # max degree, lowest id on ties
    return max(g.nodes(), key=lambda v: (g.degree(v), -v))


def _run(g: Graph, steps: int, mode: RemovalMode, rng) -> RobustnessSeries:
    check_graph(g)
    steps = check_count(steps, "steps")
    if steps >= g.node_count:
        raise ValueError(f"steps={steps} must be below the node count {g.node_count}")
    work = g.copy()
    series = RobustnessSeries(mode, work.lcc_diameter(), work.node_count)
    for step in range(1, steps + 1):
        if mode is RemovalMode.ATTACK:
            victim = _pick_attack_target(work)
        else:
            alive = work.nodes()
            victim = alive[int(rng.integers(len(alive)))]
        work.remove_node(victim)
        diam, size, n_comp = work.lcc_summary()
        series.steps.append(RemovalStep(
            step=step,
            removed_node=victim,
            lcc_diameter=diam,
            connected=n_comp == 1,
            lcc_size=size,
            survivors=work.node_count,
        ))
    return series


def run_failure(g: Graph, steps: int, seed=None) -> RobustnessSeries:
    """Remove ``steps`` uniformly random nodes one at a time from a copy of ``g``."""
    return _run(g, steps, RemovalMode.FAILURE, check_rng(seed))


def run_attack(g: Graph, steps: int) -> RobustnessSeries:
    """Repeatedly remove the node of highest current degree from a copy of ``g``."""
    return _run(g, steps, RemovalMode.ATTACK, None)


class RemovalExperiment(BaseEstimator):
    """Estimator wrapper around :func:`run_failure` / :func:`run_attack`.

    Parameters
    ----------
    mode : {"failure", "attack"}
    steps : int
        Number of nodes to delete.
    random_state : int, Generator or None
        Only used in failure mode.

    Attributes
    ----------
    series_ : RobustnessSeries
    first_increase_step_ : int or None
    disconnect_step_ : int or None
    """

    def __init__(self, mode="failure", steps=100, random_state=None):
        self.mode = mode
        self.steps = steps
        self.random_state = random_state

    def fit(self, g, y=None):
        mode = RemovalMode(self.mode)
        if mode is RemovalMode.ATTACK:
            self.series_ = run_attack(g, self.steps)
        else:
            self.series_ = run_failure(g, self.steps, self.random_state)
        self.first_increase_step_ = self.series_.first_increase_step()
        self.disconnect_step_ = self.series_.disconnect_step()
        return self
