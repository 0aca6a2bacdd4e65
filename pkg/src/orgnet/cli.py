"""Command-line entry point: ``orgnet <subcommand> [options]``."""

from __future__ import annotations

import argparse
import logging
import sys
from dataclasses import replace
from pathlib import Path

from .generators import GeneratorParams, build_network
from .graph import GraphError, read_edgelist, write_edgelist
from .harness import ConfigError, ExperimentConfig, ExperimentSpec, load_config, replicate_streams, run_experiment
from .metrics import (
    clustering_by_degree,
    clustering_scaling,
    degree_histogram,
    write_clustering_csv,
    write_fits_csv,
    write_histogram_csv,
)

log = logging.getLogger("orgnet")

_NET_FLAGS = {
    "kind": "kind", "n": "n", "m_edges": "m_edges", "m_attach": "m_attach",
    "seed_path": "seed_path", "levels": "levels", "branching": "branching", "recursion": "recursion",
}
_EXP_FLAGS = ("mode", "steps", "t_steps", "n_products", "m_ones")


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", type=Path, help="YAML config or manifest to start from")
    p.add_argument("--seed", type=int, help="base seed; replicate r uses seed + r")
    p.add_argument("--replicates", type=int)
    p.add_argument("--out", type=Path, help="output directory")
    p.add_argument("--workers", type=int)
    p.add_argument("-v", "--verbose", action="store_true")


def _network(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("network")
    g.add_argument("--kind", choices=["random", "nonhierarchical", "ba", "hierarchical"])
    g.add_argument("--n", type=int, help="node count (random, nonhierarchical)")
    g.add_argument("--m-edges", type=int, help="edge count (random)")
    g.add_argument("--m-attach", type=int, help="edges per new node (nonhierarchical)")
    g.add_argument("--seed-path", type=int, help="initial path length (nonhierarchical)")
    g.add_argument("--levels", type=int, help="recursion depth (hierarchical)")
    g.add_argument("--branching", type=int, help="building blocks per cluster (hierarchical)")
    g.add_argument("--recursion", choices=["copies", "leader"])


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="orgnet", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="build networks and write edge lists")
    _common(p)
    _network(p)

    p = sub.add_parser("metrics", help="degree histogram, C(k) and scaling fits")
    _common(p)
    _network(p)
    p.add_argument("--graph", type=Path, help="analyse this edge list instead of generating")

    p = sub.add_parser("robustness", help="failure / attack node removal")
    _common(p)
    _network(p)
    p.add_argument("--mode", choices=["failure", "attack"])
    p.add_argument("--steps", type=int)

    p = sub.add_parser("friction", help="color alignment dynamics")
    _common(p)
    _network(p)
    p.add_argument("--t-steps", type=int)

    p = sub.add_parser("synergy", help="need/food/garbage dynamics")
    _common(p)
    _network(p)
    p.add_argument("--mode", choices=["propagation", "non-propagation"])
    p.add_argument("--t-steps", type=int)
    p.add_argument("--n-products", type=int)
    p.add_argument("--m-ones", type=int)

    p = sub.add_parser("paper-suite", help="canonical reproduction runs plus pass/fail report")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--replicates", type=int, default=20)
    p.add_argument("--out", type=Path, default=Path("paper_suite"))
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--no-replay", action="store_true", help="skip the manifest replay check")
    p.add_argument("-v", "--verbose", action="store_true")
    return parser


def config_from_args(args: argparse.Namespace, kind: str) -> ExperimentConfig:
    cfg = load_config(args.config) if args.config else ExperimentConfig()
    net_over = {field: getattr(args, flag) for flag, field in _NET_FLAGS.items()
                if getattr(args, flag, None) is not None}
    exp_over = {f: getattr(args, f) for f in _EXP_FLAGS if getattr(args, f, None) is not None}
    try:
        network = replace(cfg.network, **net_over) if net_over else cfg.network
        if cfg.experiment.kind == kind:
            experiment = replace(cfg.experiment, **exp_over)
        else:
            experiment = ExperimentSpec(kind=kind, **exp_over)
        top = {"base_seed": args.seed, "replicates": args.replicates, "workers": args.workers,
               "output_dir": None if args.out is None else str(args.out)}
        return replace(cfg, network=network, experiment=experiment,
                       **{k: v for k, v in top.items() if v is not None})
    except (TypeError, ValueError) as exc:
        raise ConfigError(str(exc)) from exc


def _generate(args) -> None:
    cfg = config_from_args(args, "structure")
    out = Path(cfg.output_dir)
    out.mkdir(parents=True, exist_ok=True)
    for r, seed in enumerate(cfg.seeds()):
        net_rng, _ = replicate_streams(seed)
        g = build_network(cfg.network, net_rng)
        write_edgelist(g, out / f"rep{r:03d}_edges.txt")
        print(f"rep{r:03d}: {g.node_count} nodes, {g.edge_count} edges")


def _metrics_from_file(args) -> None:
    g = read_edgelist(args.graph)
    out = args.out or Path(".")
    out.mkdir(parents=True, exist_ok=True)
    write_histogram_csv(out / "degree.csv", degree_histogram(g))
    write_clustering_csv(out / "clustering.csv", clustering_by_degree(g))
    write_fits_csv(out / "fits.csv", {"cc_vs_degree": clustering_scaling(g)})
    print(f"{g.node_count} nodes, {g.edge_count} edges, diameter {g.diameter()}")


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        if args.command == "paper-suite":
            from .suite import paper_suite

            report = paper_suite(args.out, args.seed, args.replicates, args.workers,
                                 replay=not args.no_replay)
            print(report)
            print(f"report written to {args.out / 'report.md'}")
        elif args.command == "generate":
            _generate(args)
        elif args.command == "metrics" and args.graph is not None:
            _metrics_from_file(args)
        else:
            kind = "structure" if args.command == "metrics" else args.command
            cfg = config_from_args(args, kind)
            res = run_experiment(cfg)
            print(f"{kind}: {cfg.replicates} replicate(s), {len(res.files)} files in {cfg.output_dir}")
    except (ConfigError, GraphError, ValueError) as exc:
        print(f"orgnet: error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"orgnet: I/O error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
