"""Configured, seeded experiment runs with CSV output and a replayable manifest.

Replicate ``r`` of an experiment uses seed ``base_seed + r``. That seed is
split with :class:`numpy.random.SeedSequence` into one stream for building
the network and one for the dynamics, so structural and dynamical
randomness never share draws.
"""

from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any

import numpy as np
import yaml

from . import __version__
from .generators import GeneratorParams, NetworkKind, build_network
from .graph import write_edgelist
from .metrics import (
    OlsFit,
    clustering_by_degree,
    clustering_scaling,
    degree_histogram,
    degree_scaling,
    write_clustering_csv,
    write_csv,
    write_fits_csv,
    write_histogram_csv,
)
from .friction import run_friction
from .robustness import RemovalMode, run_attack, run_failure
from .synergy import SynergyMode, run_synergy

log = logging.getLogger(__name__)

EXPERIMENTS = ("structure", "robustness", "friction", "synergy")


class ConfigError(ValueError):
    pass


@dataclass
class ExperimentSpec:
    kind: str = "structure"
    mode: str | None = None
    steps: int = 100
    t_steps: int | None = None
    n_products: int = 20
    m_ones: int = 5

    def __post_init__(self) -> None:
        if self.kind not in EXPERIMENTS:
            raise ConfigError(f"unknown experiment {self.kind!r}; expected one of {EXPERIMENTS}")
        if self.kind == "robustness":
            self.mode = RemovalMode(self.mode or "failure").value
        elif self.kind == "synergy":
            self.mode = SynergyMode.parse(self.mode or "propagation").value
            if self.t_steps is None:
                self.t_steps = 30
        elif self.kind == "friction" and self.t_steps is None:
            self.t_steps = 10


@dataclass
class ExperimentConfig:
    network: GeneratorParams = field(default_factory=GeneratorParams)
    experiment: ExperimentSpec = field(default_factory=ExperimentSpec)
    replicates: int = 1
    base_seed: int = 0
    output_dir: str = "out"
    workers: int = 1

    def __post_init__(self) -> None:
        if self.replicates < 1:
            raise ConfigError("replicates must be >= 1")
        if self.workers < 1:
            raise ConfigError("workers must be >= 1")

    def seeds(self) -> list[int]:
        return [self.base_seed + r for r in range(self.replicates)]

    def to_dict(self) -> dict[str, Any]:
        return {
            "network": self.network.to_dict(),
            "experiment": asdict(self.experiment),
            "replicates": self.replicates,
            "base_seed": self.base_seed,
            "output_dir": str(self.output_dir),
            "workers": self.workers,
        }

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> "ExperimentConfig":
        d = dict(d or {})
        try:
            net = GeneratorParams(**(d.pop("network", None) or {}))
            exp = ExperimentSpec(**(d.pop("experiment", None) or {}))
            d.pop("seeds", None)
            d.pop("version", None)
            return cls(network=net, experiment=exp, **d)
        except (TypeError, ValueError) as exc:
            raise ConfigError(str(exc)) from exc


def load_config(path: str | Path) -> ExperimentConfig:
    """Read a YAML config (or a manifest written by :func:`run_experiment`)."""
    try:
        data = yaml.safe_load(Path(path).read_text())
    except (OSError, yaml.YAMLError) as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    if not isinstance(data, dict):
        raise ConfigError(f"{path}: top level must be a mapping")
    return ExperimentConfig.from_dict(data)


def replicate_streams(seed: int) -> tuple[np.random.Generator, np.random.Generator]:
    """``(network_rng, dynamics_rng)`` for one replicate seed."""
    net, dyn = np.random.SeedSequence(seed).spawn(2)
    return np.random.default_rng(net), np.random.default_rng(dyn)


def run_replicate(cfg: ExperimentConfig, seed: int):
    """Build the network and run the configured experiment for one seed."""
    net_rng, dyn_rng = replicate_streams(seed)
    g = build_network(cfg.network, net_rng)
    exp = cfg.experiment
    if exp.kind == "structure":
        result = {
            "histogram": degree_histogram(g),
            "clustering": clustering_by_degree(g),
            "cc_fit": _try(clustering_scaling, g),
            "pk_fit": _try(degree_scaling, g),
            "diameter": g.diameter() if g.is_connected() else None,
            "nodes": g.node_count,
            "edges": g.edge_count,
        }
    elif exp.kind == "robustness":
        if exp.mode == RemovalMode.ATTACK.value:
            result = run_attack(g, exp.steps)
        else:
            result = run_failure(g, exp.steps, dyn_rng)
    elif exp.kind == "friction":
        result = run_friction(g, exp.t_steps, dyn_rng)
    else:
        result = run_synergy(g, exp.t_steps, exp.mode, exp.n_products, exp.m_ones, dyn_rng)
    return g, result


def _try(fn, *args):
    try:
        return fn(*args)
    except ValueError:
        return None


@dataclass
class ExperimentResult:
    config: ExperimentConfig
    seeds: list[int]
    graphs: list
    records: list
    files: list[Path] = field(default_factory=list)


def _run_one(args):
    cfg, seed = args
    return run_replicate(cfg, seed)


def run_experiment(cfg: ExperimentConfig, write: bool = True) -> ExperimentResult:
    """Run every replicate, then write per-replicate CSVs, a summary and the manifest."""
    seeds = cfg.seeds()
    jobs = [(cfg, s) for s in seeds]
    if cfg.workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            outputs = list(pool.map(_run_one, jobs))
    else:
        outputs = [_run_one(j) for j in jobs]
    res = ExperimentResult(cfg, seeds, [g for g, _ in outputs], [r for _, r in outputs])
    if write:
        _write_outputs(res)
    return res


def _write_outputs(res: ExperimentResult) -> None:
    cfg = res.config
    out = Path(cfg.output_dir)
    try:
        out.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise ConfigError(f"cannot create output directory {out}: {exc}") from exc
    files = res.files
    kind = cfg.experiment.kind
    for r, (seed, g, rec) in enumerate(zip(res.seeds, res.graphs, res.records)):
        stem = out / f"rep{r:03d}"
        write_edgelist(g, f"{stem}_edges.txt")
        files.append(Path(f"{stem}_edges.txt"))
        if kind == "structure":
            write_histogram_csv(f"{stem}_degree.csv", rec["histogram"])
            write_clustering_csv(f"{stem}_clustering.csv", rec["clustering"])
            write_fits_csv(f"{stem}_fits.csv", {k: v for k, v in
                                                (("cc_vs_degree", rec["cc_fit"]), ("pk_vs_degree", rec["pk_fit"]))
                                                if v is not None})
            files += [Path(f"{stem}_{s}.csv") for s in ("degree", "clustering", "fits")]
        elif kind == "robustness":
            rec.to_csv(f"{stem}_robustness.csv")
            files.append(Path(f"{stem}_robustness.csv"))
        elif kind == "friction":
            rec.to_csv(f"{stem}_friction.csv", f"{stem}_friction_summary.csv")
            files += [Path(f"{stem}_friction.csv"), Path(f"{stem}_friction_summary.csv")]
        else:
            rec.trace_csv(f"{stem}_trace.csv")
            rec.table_csv(f"{stem}_synergy.csv")
            rec.summary_csv(f"{stem}_synergy_summary.csv")
            files += [Path(f"{stem}_{s}.csv") for s in ("trace", "synergy", "synergy_summary")]

    summary = out / "summary.csv"
    _SUMMARIES[kind](res, summary)
    files.append(summary)
    if kind in ("robustness", "synergy"):
        files.append(out / "ensemble.csv")

    manifest = out / "manifest.yaml"
    data = cfg.to_dict()
    data["seeds"] = res.seeds
    data["version"] = __version__
    manifest.write_text(yaml.safe_dump(data, sort_keys=True))
    files.append(manifest)
    log.info("wrote %d files to %s", len(files), out)


def _fit_cells(fit: OlsFit | None) -> list:
    return [None] * 3 if fit is None else [fit.slope, fit.ci95_lo, fit.ci95_hi]


def _summary_structure(res, path):
    rows = []
    for r, (seed, rec) in enumerate(zip(res.seeds, res.records)):
        rows.append([r, seed, rec["nodes"], rec["edges"], rec["diameter"], max(rec["histogram"])]
                    + _fit_cells(rec["cc_fit"]) + _fit_cells(rec["pk_fit"]))
    write_csv(path, ["replicate", "seed", "nodes", "edges", "diameter", "max_degree",
                     "cc_slope", "cc_ci_lo", "cc_ci_hi", "pk_slope", "pk_ci_lo", "pk_ci_hi"], rows)


def _summary_robustness(res, path):
    rows = []
    for r, (seed, s) in enumerate(zip(res.seeds, res.records)):
        rows.append([r, seed, s.initial_diameter, s.first_increase_step(),
                     s.disconnect_step(), s.fall_apart_step()])
    write_csv(path, ["replicate", "seed", "initial_diameter", "first_increase_step",
                     "disconnect_step", "fall_apart_step"], rows)
    diam = np.array([s.diameters for s in res.records])
    conn = np.array([[st.connected for st in s.steps] for s in res.records], dtype=float)
    ens = ([i + 1, float(np.median(diam[:, i])), float(conn[:, i].mean())] for i in range(diam.shape[1]))
    write_csv(Path(path).with_name("ensemble.csv"), ["step", "median_lcc_diameter", "frac_connected"], ens)


def _summary_friction(res, path):
    rows = []
    for r, (seed, rec) in enumerate(zip(res.seeds, res.records)):
        row = [r, seed, rec.fitness_mean, rec.fitness_std, rec.colordiff_mean, rec.colordiff_std]
        for name in ("fitness~degree", "fitness~clustering", "colordiff~degree", "colordiff~clustering"):
            row += _fit_cells(rec.fits.get(name))
        rows.append(row)
    header = ["replicate", "seed", "fitness_mean", "fitness_std", "colordiff_mean", "colordiff_std"]
    for name in ("fit_deg", "fit_cc", "cd_deg", "cd_cc"):
        header += [f"{name}_slope", f"{name}_ci_lo", f"{name}_ci_hi"]
    write_csv(path, header, rows)


def _summary_synergy(res, path):
    rows = []
    for r, (seed, rec) in enumerate(zip(res.seeds, res.records)):
        row = [r, seed, rec.dfitness_mean, rec.dfitness_std]
        for name in ("dfitness~degree", "dfitness~clustering", "need_hamming~degree", "need_hamming~clustering"):
            row += _fit_cells(rec.fits.get(name))
        rows.append(row)
    header = ["replicate", "seed", "dfitness_mean", "dfitness_std"]
    for name in ("df_deg", "df_cc", "nh_deg", "nh_cc"):
        header += [f"{name}_slope", f"{name}_ci_lo", f"{name}_ci_hi"]
    write_csv(path, header, rows)
    trace = np.mean([rec.mean_fitness for rec in res.records], axis=0)
    write_csv(Path(path).with_name("ensemble.csv"), ["step", "mean_fitness"], enumerate(trace))


_SUMMARIES = {
    "structure": _summary_structure,
    "robustness": _summary_robustness,
    "friction": _summary_friction,
    "synergy": _summary_synergy,
}


def paper_networks() -> dict[str, GeneratorParams]:
    """The three matched-size networks used throughout the comparison."""
    return {
        "hierarchical": GeneratorParams(kind=NetworkKind.HIERARCHICAL, levels=4, branching=4),
        "nonhierarchical": GeneratorParams(kind=NetworkKind.NONHIERARCHICAL, n=121, m_attach=4, seed_path=5),
        "random": GeneratorParams(kind=NetworkKind.RANDOM, n=121, m_edges=1025),
    }
