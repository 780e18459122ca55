"""Command-line entry point: ``qksl verify``, ``qksl dims`` and ``qksl wolf-table``."""

from __future__ import annotations

import argparse
import json
import sys

from . import report, wolf
from .clifford import check_dimensions


def _fmt(x) -> str:
    return str(x)


def wolf_rows(n_classical: int = 3) -> list[dict]:
    out = []
    for e in wolf.wolf_table(n_classical):
        tv = wolf.check_trace_identity(e)
        rv = wolf.check_regularity_criterion(e)
        stated_ok = all(e.rho_eigenvalues[k] == v for k, v in e.stated_rho.items())
        out.append({"name": e.name, "n": e.n, "ideals": [list(i) for i in e.ideals],
                    "l": {k: _fmt(v) for k, v in e.l_values.items()},
                    "rho": {k: _fmt(v) for k, v in e.rho_eigenvalues.items()},
                    "rho_hyper": {k: _fmt(v) for k, v in rv.hyper_eigenvalues.items()},
                    "regularity": rv.verdict, "trace_identity": tv.ok and stated_ok})
    return out


def format_wolf_table(rows: list[dict]) -> str:
    lines = [f"{'space':22} {'n':>3}  {'l_i':34} {'rho eigenvalues':34} regularity"]
    for r in rows:
        ls = ", ".join(f"{k}:{v}" for k, v in r["l"].items())
        rho = ", ".join(f"{k}:{v}" for k, v in r["rho"].items())
        flag = "" if r["trace_identity"] else "  (trace identity FAILS)"
        lines.append(f"{r['name']:22} {r['n']:>3}  {ls:34} {rho:34} {r['regularity']}{flag}")
    return "\n".join(lines)


def cmd_verify(args) -> int:
    suite = args.suite_pos or args.suite or "all"
    if suite != "all" and suite not in report.SUITES:
        print(f"qksl verify: unknown suite {suite!r}; choose from {', '.join(report.SUITES + ('all',))}",
              file=sys.stderr)
        return 2
    if args.n_max < 2 or args.r_max < 0:
        print("qksl verify: need --n-max >= 2 and --r-max >= 0", file=sys.stderr)
        return 2
    reports = report.run_suite(suite, args.n_max, args.r_max)
    timing = not args.no_timing
    if args.json:
        print(report.to_json(suite, reports, timing))
    else:
        print(report.to_table(reports, timing))
        if suite == "wolf":
            print()
            print(format_wolf_table(wolf_rows(args.n_max)))
    return 0 if report.aggregate(reports) == "pass" else 1


def cmd_dims(args) -> int:
    if args.n < 1:
        print("qksl dims: n must be >= 1", file=sys.stderr)
        return 2
    res = check_dimensions(args.n)
    ranks = res.details["ranks"]
    if args.json:
        doc = {"schema": report.SCHEMA, "n": args.n, "ranks": ranks, "sum": sum(ranks),
               "expected": 4 ** args.n, "status": "pass" if res.ok else "fail",
               "failures": res.failures}
        print(json.dumps(doc, ensure_ascii=False, sort_keys=True, default=str))
    else:
        for r, k in enumerate(ranks):
            print(f"rank S_{r} = {k}")
        mark = "ok" if sum(ranks) == 4 ** args.n else "MISMATCH"
        print(f"sum = {sum(ranks)}, 2^(2n) = {4 ** args.n}  {mark}")
        for f in res.failures:
            print(f"MISMATCH {json.dumps(f, ensure_ascii=False, default=str)}")
    return 0 if res.ok else 1


def cmd_wolf_table(args) -> int:
    rows = wolf_rows(args.n_max)
    if args.json:
        print(json.dumps({"schema": report.SCHEMA, "rows": rows}, ensure_ascii=False, sort_keys=True))
    else:
        print(format_wolf_table(rows))
    return 0 if all(r["trace_identity"] for r in rows) else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qksl", description="Exact verification of the spinor, Killing and Wolf-space identities.")
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("suite_pos", nargs="?", metavar="SUITE", help="suite name or 'all'")
    v.add_argument("--suite", help="suite name (alternative to the positional argument)")
    v.add_argument("--n-max", type=int, default=3)
    v.add_argument("--r-max", type=int, default=3)
    v.add_argument("--json", action="store_true")
    v.add_argument("--no-timing", action="store_true")
    v.set_defaults(func=cmd_verify)

    d = sub.add_parser("dims", help="spinor subbundle ranks for one n")
    d.add_argument("n", type=int)
    d.add_argument("--json", action="store_true")
    d.set_defaults(func=cmd_dims)

    w = sub.add_parser("wolf-table", help="curvature data of the Wolf spaces")
    w.add_argument("--n-max", type=int, default=3, help="n used for the classical families")
    w.add_argument("--json", action="store_true")
    w.set_defaults(func=cmd_wolf_table)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
