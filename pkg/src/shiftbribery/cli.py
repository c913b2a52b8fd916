"""``shiftbribe`` command line tool.

Machine-readable output (JSON lines, CSV) goes to standard output,
human-readable summaries to standard error.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from pathlib import Path

from . import borda, scoring_ptas
from .election import scores
from .exceptions import BudgetExceeded, ShiftBriberyError
from .hardness import reduce_clique_gap, reduce_dks_aon, reduce_dks_unit, reduce_setcover, reduce_vc3
from .io import (
    RunReport,
    Stopwatch,
    format_action,
    format_instance,
    format_rational,
    parse_action,
    parse_graph,
    parse_instance,
    parse_setcover,
    random_instance,
)
from .oracle import brute_force_opt
from .pricing import INF, cost, is_successful

ALGORITHMS = ("ptas-unit", "fpt", "eptas-unit", "lp-additive", "ptas-general", "greedy-aon")
REDUCTIONS = ("dks-aon", "dks-unit", "clique-gap", "setcover", "setcover-unit", "vc3")
FAMILY_FOR = {
    "ptas-unit": "unit",
    "eptas-unit": "unit",
    "lp-additive": "unit",
    "fpt": "general",
    "ptas-general": "general",
    "greedy-aon": "uniform-aon",
}


def run_algorithm(name: str, instance, eps):
    """Return the action chosen by algorithm ``name``."""
    if name == "ptas-unit":
        return borda.ptas_unit(instance, eps)
    if name == "fpt":
        _, action = borda.fpt_exact(instance)
        if action is None:
            raise ShiftBriberyError("no finite-cost successful action exists")
        return action
    if name == "eptas-unit":
        return scoring_ptas.eptas_unit(instance, eps)
    if name == "lp-additive":
        return scoring_ptas.lp_additive_unit(instance)
    if name == "ptas-general":
        return scoring_ptas.ptas_general(instance, eps)
    if name == "greedy-aon":
        return borda.greedy_uniform_aon(instance)
    raise ValueError(f"unknown algorithm {name!r}")


def _eps(text: str) -> Fraction:
    try:
        value = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"bad epsilon {text!r}") from None
    if value <= 0:
        raise argparse.ArgumentTypeError("epsilon must be positive")
    return value


def _read(path: str) -> str:
    return sys.stdin.read() if path == "-" else Path(path).read_text()


def _solve_report(name, instance, eps, with_oracle: bool) -> RunReport:
    with Stopwatch() as clock:
        action = run_algorithm(name, instance, eps)
    opt = brute_force_opt(instance).opt_cost if with_oracle else None
    return RunReport.build(
        name, eps, cost(instance, action), action, is_successful(instance, action), opt, clock.elapsed
    )


def cmd_solve(args) -> int:
    instance = parse_instance(_read(args.instance))
    report = _solve_report(args.algo, instance, args.eps, args.oracle)
    print(report.to_json())
    if args.action_out:
        Path(args.action_out).write_text(format_action(report.action))
    print(f"{args.algo}: cost {report.cost}, {report.unit_shifts} unit shifts, success {report.success}", file=sys.stderr)
    return 0


def cmd_oracle(args) -> int:
    instance = parse_instance(_read(args.instance))
    result = brute_force_opt(instance, budget=args.budget)
    record = {
        "opt_cost": format_rational(result.opt_cost),
        "witness": None if result.witness is None else list(result.witness),
        "explored": result.explored,
    }
    print(json.dumps(record))
    return 0


def _score_summary(instance):
    table = scores(instance.election, instance.rule)
    counts = Counter(table)
    return {
        "p_score": format_rational(table[instance.p]),
        "scores": [[format_rational(s), counts[s]] for s in sorted(counts)],
    }


def cmd_generate(args) -> int:
    r = args.reduction
    if r in ("setcover", "setcover-unit"):
        if not args.setcover:
            raise ShiftBriberyError("--setcover is required for this reduction")
        sc = parse_setcover(_read(args.setcover))
        instance, witness = reduce_setcover(sc, unit=(r == "setcover-unit"))
    else:
        if not args.graph:
            raise ShiftBriberyError("--graph is required for this reduction")
        graph = parse_graph(_read(args.graph))
        if args.k is None:
            raise ShiftBriberyError("--k is required for this reduction")
        if r == "vc3":
            instance, witness = reduce_vc3(graph, args.k)
        elif r == "clique-gap":
            instance, witness = reduce_clique_gap(graph, args.k, args.delta)
        else:
            if args.t is None:
                raise ShiftBriberyError("--t is required for this reduction")
            build = reduce_dks_aon if r == "dks-aon" else reduce_dks_unit
            instance, witness = build(graph, args.k, args.t)
    text = format_instance(instance)
    if args.out:
        Path(args.out).write_text(text)
    if witness is not None and args.witness_out:
        Path(args.witness_out).write_text(format_action(witness.action))
    record = {"reduction": r, "m": instance.m, "n": instance.n, **_score_summary(instance)}
    if witness is not None:
        record["witness_cost"] = format_rational(witness.cost)
        record["witness_bound"] = format_rational(witness.bound)
    print(json.dumps(record))
    if not args.out:
        sys.stderr.write(text if instance.m * instance.n <= 10_000 else "(instance too large to echo; use --out)\n")
    return 0


def cmd_verify(args) -> int:
    instance = parse_instance(_read(args.instance))
    action = parse_action(_read(args.action))
    ok = is_successful(instance, action)
    price = cost(instance, action)
    print(json.dumps({"success": ok, "cost": format_rational(price)}))
    return 0 if ok else 1


def _bench_row(job):
    seed, m, n, family, algo, eps = job
    instance = random_instance(seed, m, n, family, scoring=(algo == "ptas-general"))
    opt = brute_force_opt(instance).opt_cost
    if opt == INF:
        return None
    report = _solve_report(algo, instance, eps, with_oracle=False)
    ratio = "1" if opt == 0 and report.cost == "0" else format_rational(Fraction(report.cost) / opt) if opt else "inf"
    return [seed, algo, format_rational(eps), report.cost, format_rational(opt), ratio, report.success, report.wall_time]


def cmd_bench(args) -> int:
    algos = args.algos.split(",")
    for a in algos:
        if a not in ALGORITHMS:
            raise ShiftBriberyError(f"unknown algorithm {a!r}")
    jobs = [
        (seed, args.m, args.n, FAMILY_FOR[a] if args.family == "auto" else args.family, a, args.eps)
        for seed in range(args.seed0, args.seed0 + args.seeds)
        for a in algos
    ]
    writer = csv.writer(sys.stdout, lineterminator="\n")
    writer.writerow(["seed", "algorithm", "eps", "cost", "oracle", "ratio", "success", "wall_time"])
    if args.workers > 1:
        with ProcessPoolExecutor(args.workers) as pool:
            rows = list(pool.map(_bench_row, jobs))
    else:
        rows = [_bench_row(j) for j in jobs]
    for row in rows:
        if row is not None:
            writer.writerow(row)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="shiftbribe", description="Shift-Bribery solvers and generators")
    sub = parser.add_subparsers(dest="command", required=True)

    s = sub.add_parser("solve", help="run an algorithm on an instance file")
    s.add_argument("instance", help="instance file, or - for standard input")
    s.add_argument("--algo", choices=ALGORITHMS, required=True)
    s.add_argument("--eps", type=_eps, default=Fraction(1, 2))
    s.add_argument("--oracle", action="store_true", help="also compute the exact optimum and the ratio")
    s.add_argument("--action-out", help="write the action to this file")
    s.set_defaults(func=cmd_solve)

    o = sub.add_parser("oracle", help="exact optimum by exhaustive search")
    o.add_argument("instance")
    o.add_argument("--budget", type=int, default=None)
    o.set_defaults(func=cmd_oracle)

    g = sub.add_parser("generate", help="build an instance from a graph or set cover file")
    g.add_argument("--reduction", choices=REDUCTIONS, required=True)
    g.add_argument("--graph")
    g.add_argument("--setcover")
    g.add_argument("--k", type=int)
    g.add_argument("--t", type=int)
    g.add_argument("--delta", type=_eps, default=Fraction(1, 2))
    g.add_argument("--out", help="write the instance file here")
    g.add_argument("--witness-out", help="write the completeness witness action here")
    g.set_defaults(func=cmd_generate)

    v = sub.add_parser("verify", help="check that an action makes p win")
    v.add_argument("instance")
    v.add_argument("action")
    v.set_defaults(func=cmd_verify)

    b = sub.add_parser("bench", help="compare algorithms with the oracle on random instances")
    b.add_argument("--algos", default="ptas-unit,fpt,lp-additive")
    b.add_argument("--seeds", type=int, default=20)
    b.add_argument("--seed0", type=int, default=0)
    b.add_argument("--m", type=int, default=4)
    b.add_argument("--n", type=int, default=4)
    b.add_argument("--family", default="auto", choices=("auto", "unit", "uniform-aon", "one-inf-aon", "general"))
    b.add_argument("--eps", type=_eps, default=Fraction(1, 2))
    b.add_argument("--workers", type=int, default=1)
    b.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except BudgetExceeded as exc:
        print(f"shiftbribe: {exc}", file=sys.stderr)
        return 2
    except (ShiftBriberyError, ValueError, OSError) as exc:
        print(f"shiftbribe: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
