"""Degree/clustering distributions and the regressions used to summarise them."""

from __future__ import annotations

import csv
import math
from collections import Counter
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np
from scipy import stats
from sklearn.base import BaseEstimator, TransformerMixin

from ._validation import check_graph
from .graph import EmptyGraphError, Graph


@dataclass(frozen=True)
class OlsFit:
    slope: float
    intercept: float
    ci95_lo: float
    ci95_hi: float
    n_points: int

    def excludes_zero(self) -> bool:
        return self.ci95_lo > 0 or self.ci95_hi < 0

    @classmethod
    def header(cls) -> list[str]:
        return ["slope", "ci_lo", "ci_hi", "intercept", "n"]

    def row(self) -> list:
        return [self.slope, self.ci95_lo, self.ci95_hi, self.intercept, self.n_points]


def degree_histogram(g: Graph) -> dict[int, int]:
    """Node count per observed degree, sorted by degree."""
    if g.node_count == 0:
        raise EmptyGraphError("graph has no nodes")
    return dict(sorted(Counter(g.degrees().values()).items()))


def degree_frequencies(g: Graph) -> dict[int, float]:
    hist = degree_histogram(g)
    n = g.node_count
    return {k: c / n for k, c in hist.items()}


def clustering_by_degree(g: Graph) -> dict[int, float]:
    """Mean clustering coefficient per degree, over nodes of degree >= 2."""
    sums: dict[int, float] = {}
    counts: Counter[int] = Counter()
    for v in g.nodes():
        c = g.clustering_coefficient(v)
        if c is None:
            continue
        k = g.degree(v)
        sums[k] = sums.get(k, 0.0) + c
        counts[k] += 1
    if not counts:
        raise ValueError("no node has degree >= 2")
    return {k: sums[k] / counts[k] for k in sorted(counts)}


def ols_fit(x: Sequence[float], y: Sequence[float]) -> OlsFit:
    """Least-squares line with a two-sided 95% t-interval on the slope."""
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if x.shape != y.shape or x.ndim != 1:
        raise ValueError("x and y must be 1-d and of equal length")
    n = len(x)
    if n < 3:
        raise ValueError(f"need at least 3 points, got {n}")
    xm, ym = x.mean(), y.mean()
    dx = x - xm
    sxx = float(dx @ dx)
    if sxx == 0.0:
        raise ValueError("x is constant")
    slope = float(dx @ (y - ym)) / sxx
    intercept = float(ym - slope * xm)
    resid = y - (intercept + slope * x)
    sse = float(resid @ resid)
    se = math.sqrt(sse / (n - 2) / sxx)
    half = float(stats.t.ppf(0.975, n - 2)) * se
    return OlsFit(slope, intercept, slope - half, slope + half, n)


def loglog_slope(xs: Sequence[float], ys: Sequence[float]) -> OlsFit:
    xs = np.asarray(xs, dtype=np.float64)
    ys = np.asarray(ys, dtype=np.float64)
    if (xs <= 0).any() or (ys <= 0).any():
        raise ValueError("log-log fit needs strictly positive values")
    return ols_fit(np.log(xs), np.log(ys))


def clustering_scaling(g: Graph) -> OlsFit:
    """Log-log fit of C(k) against k, one point per degree; zero C(k) dropped."""
    ck = {k: c for k, c in clustering_by_degree(g).items() if c > 0}
    return loglog_slope(list(ck), list(ck.values()))


def degree_scaling(g: Graph) -> OlsFit:
    """Log-log fit of P(k) against k over observed degrees k >= 1."""
    pk = {k: p for k, p in degree_frequencies(g).items() if k > 0}
    return loglog_slope(list(pk), list(pk.values()))


def mean_std(xs: Sequence[float]) -> tuple[float, float | None]:
    """Mean and sample (n-1) standard deviation; std is ``None`` for one value."""
    arr = np.asarray(xs, dtype=np.float64)
    if arr.size == 0:
        raise ValueError("mean of empty series")
    std = float(arr.std(ddof=1)) if arr.size > 1 else None
    return float(arr.mean()), std


class NodeFeatures(TransformerMixin, BaseEstimator):
    """Per-node ``[degree, clustering]`` matrix for a graph.

    Undefined clustering (degree < 2) becomes ``fill_value``.
    """

    def __init__(self, fill_value: float = np.nan):
        self.fill_value = fill_value

    def fit(self, g, y=None):
        check_graph(g)
        self.n_features_in_ = 2
        return self

    def transform(self, g) -> np.ndarray:
        check_graph(g)
        out = np.empty((g.node_count, 2))
        for row, v in enumerate(g.nodes()):
            c = g.clustering_coefficient(v)
            out[row] = g.degree(v), self.fill_value if c is None else c
        return out

    def get_feature_names_out(self, input_features=None):
        return np.array(["degree", "clustering"], dtype=object)


def write_csv(path: str | Path, header: Sequence[str], rows) -> None:
    """CSV with a header row, ``.`` decimals and ``\\n`` line endings."""
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow([_fmt(x) for x in row])


def _fmt(x):
    if isinstance(x, (bool, np.bool_)):
        return int(x)
    if isinstance(x, (float, np.floating)):
        return repr(float(x))
    if x is None:
        return ""
    return x


def write_histogram_csv(path, hist: dict[int, int]) -> None:
    write_csv(path, ["degree", "count"], hist.items())


def write_clustering_csv(path, ck: dict[int, float]) -> None:
    write_csv(path, ["degree", "mean_cc"], ck.items())


def write_fits_csv(path, fits: dict[str, OlsFit]) -> None:
    write_csv(path, ["fit"] + OlsFit.header(), ([name] + f.row() for name, f in fits.items()))


__all__ = [
    "OlsFit", "degree_histogram", "degree_frequencies", "clustering_by_degree",
    "ols_fit", "loglog_slope", "clustering_scaling", "degree_scaling", "mean_std",
    "NodeFeatures", "write_csv",
]
