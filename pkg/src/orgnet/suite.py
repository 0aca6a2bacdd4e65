"""Canonical reproduction runs and the pass/fail report over the exit criteria."""

from __future__ import annotations

import filecmp
import itertools
import logging
import tempfile
import time
from collections import deque
from dataclasses import dataclass, field, replace
from pathlib import Path

import numpy as np

from .generators import GeneratorParams, NetworkKind, generate_ba, generate_hierarchical, preferential_targets
from .graph import Graph
from .harness import ExperimentConfig, ExperimentResult, ExperimentSpec, load_config, paper_networks, run_experiment
from .metrics import clustering_scaling, write_csv
from .synergy import run_synergy

log = logging.getLogger(__name__)

INSUFFICIENT = "insufficient replicates"


@dataclass
class Criterion:
    id: str
    description: str
    measured: str
    passed: bool | None  # None: not evaluable (e.g. single replicate)
    note: str = ""
    parts: dict[str, bool | None] = field(default_factory=dict)

    @property
    def status(self) -> str:
        if self.passed is None:
            return self.note or INSUFFICIENT
        return "pass" if self.passed else "fail"

    def line(self) -> str:
        status = self.status.upper() if self.passed is not None else self.status
        return f"[{status}] {self.id}: {self.description} -- {self.measured}"


@dataclass
class SuiteReport:
    criteria: list[Criterion] = field(default_factory=list)
    runtime_s: float = 0.0
    out_dir: Path | None = None

    def write(self, out_dir: Path) -> None:
        write_csv(out_dir / "report.csv", ["criterion", "status", "measured", "description"],
                  ([c.id, c.status, c.measured, c.description] for c in self.criteria))
        lines = ["# Paper suite report", ""]
        lines += [f"- {c.line()}" for c in self.criteria]
        lines += ["", f"runtime: {self.runtime_s:.1f} s", ""]
        (out_dir / "report.md").write_text("\n".join(lines))

    def __str__(self) -> str:
        return "\n".join(c.line() for c in self.criteria)


# -- independent oracles ---------------------------------------------------


def oracle_degree(n: int, edges) -> list[int]:
    deg = [0] * n
    for u, v in edges:
        deg[u] += 1
        deg[v] += 1
    return deg


def oracle_clustering(n: int, edges) -> list[float | None]:
    es = {frozenset(e) for e in edges}
    nbrs = [[w for w in range(n) if frozenset((v, w)) in es] for v in range(n)]
    out = []
    for v in range(n):
        k = len(nbrs[v])
        if k < 2:
            out.append(None)
            continue
        links = sum(frozenset(p) in es for p in itertools.combinations(nbrs[v], 2))
        out.append(links / (k * (k - 1) / 2))
    return out


def oracle_diameter(n: int, edges) -> float:
    adj = [[] for _ in range(n)]
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    best = 0
    for s in range(n):
        dist = [-1] * n
        dist[s] = 0
        q = deque([s])
        while q:
            x = q.popleft()
            for y in adj[x]:
                if dist[y] < 0:
                    dist[y] = dist[x] + 1
                    q.append(y)
        if min(dist) < 0:
            return float("inf")
        best = max(best, max(dist))
    return best


def random_corpus(count: int = 200, max_nodes: int = 50, seed: int = 0):
    """Random simple graphs with 1..max_nodes nodes and varied density."""
    rng = np.random.default_rng(seed)
    for _ in range(count):
        n = int(rng.integers(1, max_nodes + 1))
        p = float(rng.uniform(0.02, 0.9))
        edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
        yield n, edges


# -- criteria --------------------------------------------------------------


def _frac(flags) -> float:
    flags = list(flags)
    return sum(flags) / len(flags)


def _step_or(x, default):
    return default if x is None else x


def criterion_structural_oracles() -> Criterion:
    mismatches = 0
    for n, edges in random_corpus():
        g = Graph.from_edges(n, edges)
        if [g.degree(v) for v in range(n)] != oracle_degree(n, edges):
            mismatches += 1
        elif [g.clustering_coefficient(v) for v in range(n)] != oracle_clustering(n, edges):
            mismatches += 1
        elif g.diameter() != oracle_diameter(n, edges):
            mismatches += 1
    return Criterion("C1", "degree/clustering/diameter equal brute-force oracles on 200 graphs",
                     f"{mismatches} mismatching graphs", mismatches == 0)


def criterion_hierarchical_counts() -> Criterion:
    got = {}
    for levels in (1, 2, 3, 4, 5):
        g, _ = generate_hierarchical(levels)
        got[levels] = (g.node_count, g.edge_count, g.diameter())
    k4 = got[1][:2] == (4, 6) and all(Graph.has_edge(generate_hierarchical(1)[0], u, v)
                                      for u, v in itertools.combinations(range(4), 2))
    ok = (k4 and got[2][:2] == (16, 39) and got[4][:2] == (256, 1023)
          and got[1][2] == 1 and all(got[L][2] == 2 for L in (2, 3, 4, 5)))
    measured = "; ".join(f"L{L}: {n} nodes/{m} edges/diam {d}" for L, (n, m, d) in got.items())
    return Criterion("C2", "hierarchical K4 at level 1, 16/39 at 2, 256/1023 at 4, diameter 2 above level 1",
                     measured, ok, parts={"counts": k4 and got[2][:2] == (16, 39) and got[4][:2] == (256, 1023),
                                          "diameter": got[1][2] == 1 and all(got[L][2] == 2 for L in (2, 3, 4, 5))})


def criterion_clustering_scaling(struct: dict[str, ExperimentResult], replicates: int) -> Criterion:
    h = clustering_scaling(generate_hierarchical(4)[0])
    in_band = -1.35 <= h.slope <= -0.65
    measured = f"hierarchical slope {h.slope:.3f}"
    if replicates < 2:
        return Criterion("C3", "C(k) slope in [-1.35,-0.65] (hier.); flat C(k) in >=80% seeds (random, BA)",
                         measured, None if in_band else False,
                         parts={"hierarchical": in_band, "random": None, "nonhierarchical": None})
    fracs = {}
    for name in ("random", "nonhierarchical"):
        fits = [rec["cc_fit"] for rec in struct[name].records]
        fracs[name] = _frac(f is not None and (not f.excludes_zero() or abs(f.slope) < 0.3) for f in fits)
    measured += "; flat fraction " + ", ".join(f"{k} {v:.2f}" for k, v in fracs.items())
    parts = {"hierarchical": in_band} | {k: v >= 0.8 for k, v in fracs.items()}
    return Criterion("C3", "C(k) slope in [-1.35,-0.65] (hier.); flat C(k) in >=80% seeds (random, BA)",
                     measured, all(parts.values()), parts=parts)


def attachment_frequency_check(degrees=(1, 2, 2, 3, 4, 5, 8, 13), draws: int = 2000, seed: int = 0):
    """Empirical single-target attachment frequencies vs. k_i / sum k, in standard errors."""
    rng = np.random.default_rng(seed)
    counts = np.zeros(len(degrees))
    for _ in range(draws):
        counts[preferential_targets(degrees, 1, rng)[0]] += 1
    p = np.asarray(degrees, dtype=float) / sum(degrees)
    se = np.sqrt(p * (1 - p) / draws)
    return np.abs(counts / draws - p) / se


def criterion_ba(replicates: int, base_seed: int) -> Criterion:
    bad = 0
    runs = 0
    for n, m, sp in ((121, 4, 5), (121, 5, 5), (60, 2, 3), (30, 1, 2)):
        for s in range(base_seed, base_seed + max(replicates, 1)):
            g = generate_ba(n, m, sp, s)
            runs += 1
            bad += g.edge_count != (sp - 1) + m * (n - sp)
    z = attachment_frequency_check(seed=base_seed)
    parts = {"edge_count": bad == 0, "attachment": bool((z <= 3).all())}
    return Criterion("C4", "BA edge-count formula every run; attachment within 3 SE over 2000 draws",
                     f"{bad}/{runs} count mismatches; max |z| {z.max():.2f}", all(parts.values()), parts=parts)


def criterion_failure(fail: dict[str, ExperimentResult], steps: int, replicates: int) -> Criterion:
    desc = ("failure: median first diameter increase <=25 (random), >=40 (hier.); "
            "hier. diameter 2 until within 10 steps of disconnection in >=70% seeds")
    never = steps + 1
    med = {k: float(np.median([_step_or(s.first_increase_step(), never) for s in fail[k].records]))
           for k in ("random", "hierarchical")}

    def holds(s):
        change, disc = s.first_change_step(), s.disconnect_step()
        if change is None:
            return True
        return disc is not None and change >= disc - 10

    frac = _frac(holds(s) for s in fail["hierarchical"].records)
    measured = (f"median first increase random {med['random']:.1f}, hierarchical {med['hierarchical']:.1f} "
                f"(never = {never}); hier. unchanged-until-disconnect fraction {frac:.2f}")
    if replicates < 2:
        return Criterion("C5", desc, measured, None, parts=dict.fromkeys(("random", "hierarchical", "unchanged")))
    parts = {"random": med["random"] <= 25, "hierarchical": med["hierarchical"] >= 40, "unchanged": frac >= 0.7}
    return Criterion("C5", desc, measured, all(parts.values()), parts=parts)


def criterion_attack(fail, attack, steps: int, replicates: int) -> Criterion:
    desc = ("attack: hier. disconnects within 10 steps; random attack vs failure median "
            "first-increase steps differ by <10")
    h = attack["hierarchical"].records[0]
    dstep = h.disconnect_step()
    never_a = attack["random"].config.experiment.steps + 1
    never_f = steps + 1
    med_a = float(np.median([_step_or(s.first_increase_step(), never_a) for s in attack["random"].records]))
    med_f = float(np.median([_step_or(s.first_increase_step(), never_f) for s in fail["random"].records]))
    measured = (f"hier. disconnect step {dstep}; random median first increase attack {med_a:.1f} "
                f"vs failure {med_f:.1f}")
    h_ok = dstep is not None and dstep <= 10
    if replicates < 2:
        return Criterion("C6", desc, measured, None if h_ok else False,
                         parts={"hierarchical": h_ok, "random": None})
    parts = {"hierarchical": h_ok, "random": abs(med_a - med_f) < 10}
    return Criterion("C6", desc, measured, all(parts.values()), parts=parts)


def criterion_friction(fr: dict[str, ExperimentResult], replicates: int, cid="C7",
                       label="t=200") -> Criterion:
    desc = (f"friction ({label}): (a) hier. fitness~degree <0 & CI excl. 0 in >=80%; "
            "(b) colordiff~degree <0 in >=80% per network; (c) colordiff ordering H>NH>R in >=70%; "
            "(d) colors in [0,1], spread non-increasing")
    h = fr["hierarchical"].records
    a = _frac(f is not None and f.slope < 0 and f.excludes_zero()
              for f in (r.fits["fitness~degree"] for r in h))
    b = {k: _frac(r.fits["colordiff~degree"] is not None and r.fits["colordiff~degree"].slope < 0
                  for r in fr[k].records) for k in fr}
    c = _frac(x.colordiff_mean > y.colordiff_mean > z.colordiff_mean
              for x, y, z in zip(h, fr["nonhierarchical"].records, fr["random"].records))
    d = all(range_invariant_ok(r) for k in fr for r in fr[k].records)
    measured = (f"(a) {a:.2f}; (b) " + ", ".join(f"{k} {v:.2f}" for k, v in b.items())
                + f"; (c) {c:.2f}; (d) {'ok' if d else 'violated'}")
    if replicates < 2:
        return Criterion(cid, desc, measured, None if d else False, parts={"a": None, "b": None, "c": None, "d": d})
    parts = {"a": a >= 0.8, "b": all(v >= 0.8 for v in b.values()), "c": c >= 0.7, "d": d}
    return Criterion(cid, desc, measured, all(parts.values()), parts=parts)


def _informational(c: Criterion) -> Criterion:
    c.note = f"info: {'pass' if c.passed else 'fail' if c.passed is not None else INSUFFICIENT}"
    c.passed = None
    return c


def range_invariant_ok(rec) -> bool:
    spread = rec.color_max - rec.color_min
    return bool((rec.color_min >= 0).all() and (rec.color_max <= 1).all()
                and (np.diff(spread) <= 0).all())


def plateau_ok(trace) -> bool:
    return bool(trace[10] >= trace[1] and abs(trace[30] - trace[20]) < 0.05 * trace[20])


def identity_oracle_mismatches(instances: int = 50, seed: int = 0) -> int:
    """Identity production, no propagation: fitness vs. summed need-set overlaps."""
    bad = 0
    rng = np.random.default_rng(seed)
    for _ in range(instances):
        edges = [(u, v) for u in range(10) for v in range(u + 1, 10) if rng.random() < 0.35]
        g = Graph.from_edges(10, edges)
        rec = run_synergy(g, 5, "non-propagation", 12, 4, rng, production=np.arange(12))
        for step, need in ((0, rec.need_initial), (5, rec.need_final)):
            sets = [set(np.flatnonzero(row)) for row in need]
            expected = [sum(len(sets[i] & sets[j]) for j in g.neighbors(i)) for i in range(10)]
            bad += list(rec.fitness_history[step]) != expected
    return bad


def criterion_synergy(syn: dict[tuple[str, str], ExperimentResult], replicates: int,
                      base_seed: int) -> Criterion:
    desc = ("synergy: (a) mean dfitness propagation > non-propagation per network; "
            "(b) dfitness~degree >0 and ~clustering <0 in >=80% (all nets, both modes); "
            "(c) non-propagation plateau; (d) popcount preserved; (e) identity-permutation oracle")
    nets = sorted({k for k, _ in syn})
    mean_d = {key: float(np.mean([r.dfitness_mean for r in res.records])) for key, res in syn.items()}
    a = {k: mean_d[(k, "propagation")] > mean_d[(k, "non-propagation")] for k in nets}
    b = {}
    for key, res in syn.items():
        deg = _frac(r.fits["dfitness~degree"] is not None and r.fits["dfitness~degree"].slope > 0
                    for r in res.records)
        cc = _frac(r.fits["dfitness~clustering"] is not None and r.fits["dfitness~clustering"].slope < 0
                   for r in res.records)
        b[key] = (deg, cc)
    c = {k: plateau_ok(np.mean([r.mean_fitness for r in syn[(k, "non-propagation")].records], axis=0))
         for k in nets}
    d = all(r.popcount_ok for res in syn.values() for r in res.records)
    e = identity_oracle_mismatches(seed=base_seed)
    measured = ("(a) " + ", ".join(f"{k} {mean_d[(k, 'propagation')]:.2f} vs {mean_d[(k, 'non-propagation')]:.2f}"
                                  for k in nets)
                + "; (b) " + ", ".join(f"{k}/{m[:4]} {v[0]:.2f}/{v[1]:.2f}" for (k, m), v in b.items())
                + "; (c) " + ", ".join(f"{k} {'ok' if v else 'no'}" for k, v in c.items())
                + f"; (d) {'ok' if d else 'violated'}; (e) {e} mismatches")
    if replicates < 2:
        return Criterion("C8", desc, measured, None if (d and e == 0) else False,
                         parts={"a": None, "b": None, "c": None, "d": d, "e": e == 0})
    parts = {"a": all(a.values()), "b": all(x >= 0.8 and y >= 0.8 for x, y in b.values()),
             "c": all(c.values()), "d": d, "e": e == 0}
    return Criterion("C8", desc, measured, all(parts.values()), parts=parts)


def replay_identical(results: list[ExperimentResult]) -> tuple[int, int]:
    """Re-run each experiment from its manifest; count CSV files that differ."""
    differing = total = 0
    with tempfile.TemporaryDirectory() as tmp:
        for i, res in enumerate(results):
            out = Path(res.config.output_dir)
            cfg = load_config(out / "manifest.yaml")
            cfg.output_dir = str(Path(tmp) / str(i))
            run_experiment(cfg)
            for f in sorted(out.glob("*.csv")) + sorted(out.glob("*_edges.txt")):
                total += 1
                differing += not filecmp.cmp(f, Path(cfg.output_dir) / f.name, shallow=False)
    return differing, total


# -- driver ----------------------------------------------------------------


def _run_all(out: Path, networks: dict[str, GeneratorParams], exp: ExperimentSpec, replicates: int,
             base_seed: int, workers: int, tag: str) -> dict[str, ExperimentResult]:
    res = {}
    for name, net in networks.items():
        # the hierarchical network is deterministic: attack on it needs a single replicate
        reps = 1 if (name == "hierarchical" and exp.kind == "robustness" and exp.mode == "attack") else replicates
        cfg = ExperimentConfig(network=replace(net), experiment=replace(exp), replicates=reps,
                               base_seed=base_seed, output_dir=str(out / tag / name), workers=workers)
        log.info("running %s on %s", tag, name)
        res[name] = run_experiment(cfg)
    return res


def paper_suite(out_dir: str | Path = "paper_suite", base_seed: int = 0, replicates: int = 20,
                workers: int = 1, replay: bool = True) -> SuiteReport:
    """Run the canonical comparison and evaluate every exit criterion."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    nets = paper_networks()
    t0 = time.perf_counter()
    every: list[ExperimentResult] = []

    def run(exp, tag, networks=nets):
        r = _run_all(out, networks, exp, replicates, base_seed, workers, tag)
        every.extend(r.values())
        return r

    struct = run(ExperimentSpec("structure"), "structure")
    fail = run(ExperimentSpec("robustness", mode="failure", steps=100), "failure")
    run(ExperimentSpec("robustness", mode="failure", steps=100), "failure_m5",
        {"nonhierarchical_m5": replace(nets["nonhierarchical"], m_attach=5)})
    attack = run(ExperimentSpec("robustness", mode="attack", steps=50), "attack")
    fr10 = run(ExperimentSpec("friction"), "friction")
    fr200 = run(ExperimentSpec("friction", t_steps=200), "friction_t200")
    syn = {}
    for mode in ("propagation", "non-propagation"):
        for k, v in run(ExperimentSpec("synergy", mode=mode), f"synergy_{mode}").items():
            syn[(k, mode)] = v

    report = SuiteReport(out_dir=out)
    report.criteria += [
        criterion_structural_oracles(),
        criterion_hierarchical_counts(),
        criterion_clustering_scaling(struct, replicates),
        criterion_ba(replicates, base_seed),
        criterion_failure(fail, 100, replicates),
        criterion_attack(fail, attack, 100, replicates),
        criterion_friction(fr200, replicates),
        _informational(criterion_friction(fr10, replicates, cid="C7*", label="default t=10")),
        criterion_synergy(syn, replicates, base_seed),
    ]
    if replay:
        differing, total = replay_identical(every)
        report.criteria.append(Criterion("C9", "re-run from manifest gives byte-identical outputs",
                                         f"{differing}/{total} files differ", differing == 0))
    else:
        report.criteria.append(Criterion("C9", "re-run from manifest gives byte-identical outputs",
                                         "skipped", None, note="skipped"))
    elapsed = time.perf_counter() - t0
    report.criteria.append(Criterion("C10", "full paper suite runtime <= 300 s (runs, criteria and replay)",
                                     f"{elapsed:.1f} s with {workers} worker(s)", elapsed <= 300))
    report.runtime_s = elapsed
    report.write(out)
    return report


__all__ = ["paper_suite", "SuiteReport", "Criterion", "NetworkKind"]
