"""Command-line front end.

Subcommands: gen (write an instance file), query (JSON result on stdout),
bench (CSV of per-bucket algorithm metrics), verify (run a verification
suite). Exit codes: 0 success, 1 verification failure, 2 usage error.

All output is byte-identical across runs with the same seeds; wall-time
fields are zero unless --measure-time is given.
"""

from __future__ import annotations

import argparse
import math
import sys

from .bench import ALGOS, BenchConfig, bench_csv, resolve_r
from .geometry import gen_instance, load_instance, save_instance
from .oracle import Oracle, a_star, full_dijkstra
from .schedule import OracleParams
from .verify import SUITES

_QUERY_ALGOS = ("oracle", "full-dijkstra", "astar")


def _add_mode_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--mode", choices=("paper", "practical"), default="practical",
                   help="schedule constants: the conservative paper constants or kappa")
    p.add_argument("--kappa", type=float, default=1.0,
                   help="practical-mode replacement for c' (default 1)")


def _cmd_gen(args) -> int:
    inst = gen_instance(args.n, args.d, args.r, args.seed)
    threshold = (math.log(args.n) / args.n) ** (1.0 / args.d)
    if args.r < threshold:
        print(f"warning: r={args.r:g} is below the connectivity threshold "
              f"(log n / n)^(1/d) = {threshold:.6g}; the graph is almost surely "
              f"disconnected", file=sys.stderr)
    save_instance(inst, args.out)
    return 0


def _cmd_query(args) -> int:
    inst = load_instance(args.instance)
    if args.algo == "oracle":
        oracle = Oracle(inst, OracleParams(mode=args.mode, kappa=args.kappa))
        res = oracle.query(args.s, args.t, measure_time=args.measure_time)
    elif args.algo == "full-dijkstra":
        res = full_dijkstra(inst, args.s, args.t)
    else:
        res = a_star(inst, args.s, args.t)
    print(res.to_json())
    return 0


def _cmd_bench(args) -> int:
    cfg = BenchConfig(
        n_list=[int(x) for x in args.n.split(",")],
        d=args.d,
        r_rule=args.r_rule,
        r_value=args.r,
        queries=args.queries,
        seed=args.seed,
        mode=args.mode,
        kappa=args.kappa,
        algos=ALGOS if args.algo == "all" else (args.algo,),
        measure_time=args.measure_time,
        w_lo=args.w_lo,
        w_hi=args.w_hi,
    )
    csv = bench_csv(cfg)
    if args.out:
        with open(args.out, "w", encoding="ascii") as fh:
            fh.write(csv)
    else:
        sys.stdout.write(csv)
    return 0


def _cmd_verify(args) -> int:
    suite = SUITES[args.suite]
    kwargs = {"seed": args.seed}
    if args.suite in ("percolation", "channel") and args.trials:
        kwargs["trials"] = args.trials
    if args.suite == "counts":
        if args.instances:
            kwargs["instances"] = args.instances
        if args.n:
            kwargs["n"] = args.n
    ok, lines = suite(**kwargs)
    print(f"verify {args.suite}:")
    for ln in lines:
        print("  " + ln)
    print("PASS" if ok else "FAIL")
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="diskoracle",
        description="Exact distance oracle for weighted unit-disk graphs")
    sub = ap.add_subparsers(dest="cmd", required=True)

    g = sub.add_parser("gen", help="generate a random instance file")
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--d", type=int, default=2)
    g.add_argument("--r", type=float, required=True)
    g.add_argument("--seed", type=int, default=1)
    g.add_argument("--out", required=True)
    g.set_defaults(fn=_cmd_gen)

    q = sub.add_parser("query", help="answer one distance query as JSON")
    q.add_argument("instance")
    q.add_argument("s", type=int)
    q.add_argument("t", type=int)
    q.add_argument("--algo", choices=_QUERY_ALGOS, default="oracle")
    _add_mode_args(q)
    q.add_argument("--measure-time", action="store_true",
                   help="record real wall times (breaks byte-determinism)")
    q.set_defaults(fn=_cmd_query)

    b = sub.add_parser("bench", help="benchmark oracle vs baselines to CSV")
    b.add_argument("--n", required=True, help="comma-separated instance sizes")
    b.add_argument("--d", type=int, default=2)
    b.add_argument("--r", type=float, default=0.1,
                   help="radius (fixed rule) or coefficient (conn/quarter rules)")
    b.add_argument("--r-rule", choices=("fixed", "conn", "quarter"), default="fixed",
                   help="fixed: r; conn: c (log n / n)^(1/d); quarter: c n^(-1/4)")
    b.add_argument("--queries", type=int, default=50)
    b.add_argument("--seed", type=int, default=1)
    _add_mode_args(b)
    b.add_argument("--algo", choices=ALGOS + ("all",), default="all")
    b.add_argument("--w-lo", type=float, default=None,
                   help="only keep queries with w >= w_lo * r")
    b.add_argument("--w-hi", type=float, default=None,
                   help="only keep queries with w < w_hi * r")
    b.add_argument("--out", default=None)
    b.add_argument("--measure-time", action="store_true")
    b.set_defaults(fn=_cmd_bench)

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("suite", choices=sorted(SUITES))
    v.add_argument("--seed", type=int, default=1)
    v.add_argument("--trials", type=int, default=None)
    v.add_argument("--instances", type=int, default=None)
    v.add_argument("--n", type=int, default=None)
    v.set_defaults(fn=_cmd_verify)

    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.fn(args)
    except (ValueError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
