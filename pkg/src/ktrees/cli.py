"""Command-line interface.

Exit codes: 0 success, 2 invalid arguments, 3 infeasible solve, 4 I/O error.
"""

from __future__ import annotations

import argparse
import math
import sys

from . import analytic
from .deep import components, normal_representation
from .edgelist import read_edge_list, write_edge_list
from .errors import KTreesError
from .experiments import ExperimentConfig, emit_csv, emit_process_csv, run_experiment
from .graph import Graph, WeightDistribution, WeightedGraph, kcore
from .matroid import rank_of
from .solver import min_weight_union, run_process

EXIT_OK, EXIT_USAGE, EXIT_INFEASIBLE, EXIT_IO = 0, 2, 3, 4


def _floats(text: str) -> list[float]:
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad number list {text!r}") from exc


def _ints(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad integer list {text!r}") from exc


def _dist(text: str) -> WeightDistribution:
    try:
        return WeightDistribution.parse(text)
    except KTreesError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _plain(g) -> Graph:
    return g.graph if isinstance(g, WeightedGraph) else g


def cmd_solve(args) -> int:
    g = read_edge_list(args.input)
    # an unweighted list is solved with unit weights
    wg = g if isinstance(g, WeightedGraph) else WeightedGraph(g, [1.0] * g.m)
    sol = min_weight_union(wg, args.k)
    if args.out:
        write_edge_list(args.out, wg, sol.chosen_edges)
    if args.forests_prefix:
        for i, forest in enumerate(sol.forests):
            write_edge_list(f"{args.forests_prefix}{i}.txt", wg, sorted(forest))
    print(f"weight {sol.total_weight!r} feasible {str(sol.feasible).lower()}")
    return EXIT_OK if sol.feasible else EXIT_INFEASIBLE


def cmd_rank(args) -> int:
    g = _plain(read_edge_list(args.input))
    print(f"rank {rank_of(g, args.k)}")
    return EXIT_OK


def cmd_components(args) -> int:
    g = _plain(read_edge_list(args.input))
    if args.layers:
        rep = normal_representation(g, args.k)
        for t, layer in enumerate(rep.layers):
            for v in sorted(layer):
                print(f"{t}\t{v}")
        return EXIT_OK
    part = components(g, args.k)
    for v, cid in enumerate(part.component_id.tolist()):
        print(f"{cid}\t{v}")
    return EXIT_OK


def cmd_core(args) -> int:
    g = _plain(read_edge_list(args.input))
    core = kcore(g, args.kappa)
    print(f"size {core.size} edges {core.induced_edge_count} density {core.density!r}")
    for v in sorted(core.vertices):
        print(v)
    return EXIT_OK


def cmd_predict(args) -> int:
    cfg = analytic.SolverConfig() if args.tol is None else analytic.SolverConfig(rel_tol=args.tol)
    if args.mode == "weight":
        est = analytic.limit_weight_estimate(args.k, args.a, cfg)
        print(f"limit_weight {est.value!r} error {est.error!r}")
    elif args.mode == "thresholds":
        if args.k < 2:
            raise KTreesError("thresholds need k >= 2")
        rep = analytic.threshold_report(args.k, cfg)
        print(f"gamma_{args.k + 1}\t{rep.gamma!r}")
        print(f"d_star_core_density\t{rep.d_star!r}")
        print(f"d_star_truncated_mean\t{rep.d_alt!r}")
        print(f"discrepancy\t{rep.discrepancy!r}")
        print(f"degenerate\t{str(rep.degenerate).lower()}")
    else:
        if args.mean_degree is None:
            raise KTreesError("predict needs --mean-degree")
        row = analytic.analytic_table(args.k, args.mean_degree, cfg).row()
        print("\t".join(row))
        print("\t".join("nan" if isinstance(v, float) and math.isnan(v) else repr(v)
                        for v in row.values()))
    return EXIT_OK


def cmd_experiment(args) -> int:
    cfg = ExperimentConfig(kind=args.kind, n=args.n, k=args.k, trials=args.trials,
                           seed=args.seed, distribution=args.dist,
                           degree_grid=tuple(args.degrees or ()), output=args.csv,
                           workers=args.workers, allow_large=args.allow_large)
    records = run_experiment(cfg)
    emit_csv(records, args.csv)
    for r in records:
        if r.trial < 0:
            print(f"{r.metric}\td={r.d:.6g}\tmean={r.empirical:.6g}\tstd={r.std:.3g}"
                  f"\tpredicted={r.predicted:.6g}\trel_error={r.rel_error:.3g}")
    return EXIT_OK


def cmd_process(args) -> int:
    trace = run_process(args.n, args.k, args.checkpoints, args.seed)
    emit_process_csv(trace, args.csv)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ktrees",
        description="Minimum unions of k edge-disjoint spanning trees, deep components "
                    "and random-graph predictions.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="minimum-weight union of k spanning trees")
    p.add_argument("--input", required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--out")
    p.add_argument("--forests-prefix")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("rank", help="rank in the union of k graphic matroids")
    p.add_argument("--input", required=True)
    p.add_argument("--k", type=int, required=True)
    p.set_defaults(func=cmd_rank)

    p = sub.add_parser("components", help="k-deeply connected components")
    p.add_argument("--input", required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--layers", action="store_true",
                   help="print the normal representation of a k-deeply connected graph")
    p.set_defaults(func=cmd_components)

    p = sub.add_parser("core", help="kappa-core by peeling")
    p.add_argument("--input", required=True)
    p.add_argument("--kappa", type=int, required=True)
    p.set_defaults(func=cmd_core)

    p = sub.add_parser("predict", help="analytic predictions")
    p.add_argument("mode", nargs="?", choices=("table", "weight", "thresholds"), default="table")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--mean-degree", type=float)
    p.add_argument("--a", type=float, default=1.0)
    p.add_argument("--tol", type=float)
    p.set_defaults(func=cmd_predict)

    p = sub.add_parser("experiment", help="Monte-Carlo experiment, written as CSV")
    p.add_argument("kind", choices=("weight", "structure", "rank", "core", "density"))
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--degrees", type=_floats)
    p.add_argument("--dist", type=_dist, default=WeightDistribution())
    p.add_argument("--csv", required=True)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--allow-large", action="store_true")
    p.set_defaults(func=cmd_experiment)

    p = sub.add_parser("process", help="random graph process checkpoints, written as CSV")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--checkpoints", type=_ints, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--csv", required=True)
    p.set_defaults(func=cmd_process)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (KTreesError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
