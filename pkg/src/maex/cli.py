"""Command-line front end.

    maex table --stat sigma-maex --max-n 50 --format csv
    maex verify --identity thm1.1-all --order 200
    maex asymptotics --probe 500,1000,2000

Exit codes: 0 pass, 1 verification failure, 2 usage or resource error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from fractions import Fraction

from . import asymptotics, mock_theta, partitions, pell
from .errors import BudgetExceededError, MaexError
from .report import RunReport

STATS = ("p", "sigma-L", "sigma-mex", "sigma-maex", "diff", "expectation", "T", "S-star")

IDENTITIES = (
    "thm1.1-all",
    "eq1.1",
    "eq1.6",
    "cohen",
    "prop2.1",
    "theta",
    "roots-of-unity",
    "zagier-t",
    "thm2.2",
    "partial-sum",
    "euler-sum",
    "bijection",
    "monotonicity",
    "pell-agreement",
)

DEFAULT_ORDERS = {
    "thm1.1-all": 200,
    "eq1.1": 60,
    "eq1.6": 200,
    "cohen": 500,
    "prop2.1": 40,
    "theta": 2401,
    "roots-of-unity": 20,
    "zagier-t": 6,
    "thm2.2": 200,
    "partial-sum": 15,
    "euler-sum": 60,
    "bijection": 20,
    "monotonicity": 500,
    "pell-agreement": 1201,
}

DEFAULT_BUDGET = {"brute": partitions.DEFAULT_BRUTE_BUDGET, "series": pell.DEFAULT_SERIES_BUDGET, "pell": pell.DEFAULT_PELL_BUDGET}


def render_value(v) -> str:
    if isinstance(v, Fraction):
        return f"{v.numerator}/{v.denominator}"
    return str(v)


def table_rows(stat: str, max_n: int, budget: dict) -> list[tuple[int, object]]:
    if stat in ("T", "S-star"):
        if 24 * max_n - 1 > budget["pell"]:
            raise BudgetExceededError(f"|1 - 24*{max_n}| exceeds the Pell budget {budget['pell']}")
        if stat == "S-star":
            return [(n, pell.s_star(n)) for n in range(1, max_n + 1)]
        return [(n, pell.t_multiplicative(n)) for n in range(1 - 24 * max_n, 24 * max_n + 2, 24)]
    st = partitions.stat_table(max_n)
    get = {
        "p": lambda n: st.p[n],
        "sigma-L": lambda n: st.sigma_L[n],
        "sigma-mex": lambda n: st.sigma_mex[n],
        "sigma-maex": lambda n: st.sigma_maex[n],
        "diff": st.difference,
        "expectation": lambda n: Fraction(st.expectation(n)),
    }[stat]
    return [(n, get(n)) for n in range(1, max_n + 1)]


def format_table(stat: str, max_n: int, rows, fmt: str) -> str:
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", stat])
        for n, v in rows:
            w.writerow([n, render_value(v)])
        return buf.getvalue()
    doc = {"stat": stat, "max_n": max_n, "rows": [{"n": n, "value": render_value(v)} for n, v in rows]}
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def _series_guard(order: int, budget: dict) -> None:
    if order > budget["series"]:
        raise BudgetExceededError(f"series order {order} exceeds budget {budget['series']}")


def run_identity(identity: str, order: int, budget: dict, opts: argparse.Namespace) -> list:
    b = budget
    if identity == "thm1.1-all":
        _series_guard(order, b)
        return partitions.sigma_maex_agreement_check(order, b["brute"], _pell_provider(b)) if order >= 1 else []
    if identity == "thm2.2":
        _series_guard(order, b)
        return partitions.sigma_maex_formula_check(order, b["brute"], _pell_provider(b)) if order >= 1 else []
    if identity == "eq1.1":
        return [partitions.sigma_mex_check(order, b["brute"])] if order >= 1 else []
    if identity == "eq1.6":
        _series_guard(order, b)
        return [partitions.difference_identity_check(order)] if order >= 1 else []
    if identity == "cohen":
        _series_guard(order, b)
        return [mock_theta.cohen_check(order)]
    if identity == "prop2.1":
        return mock_theta.three_variable_identity_check(
            opts.x_degree, opts.y_degree, order, opts.specialization_order, combinatorial=order <= b["brute"]
        )
    if identity == "theta":
        _series_guard(max(0, (order - 1) // 24), b)
        return [mock_theta.theta_expansion_check(order)]
    if identity == "roots-of-unity":
        return mock_theta.root_of_unity_check(order)
    if identity == "zagier-t":
        return mock_theta.zagier_t_check(order)
    if identity == "partial-sum":
        return [partitions.partial_sum_identity_check(n, max(order, n * (n + 1) // 2)) for n in range(1, order + 1)]
    if identity == "euler-sum":
        return [partitions.euler_first_sum_check(opts.z_degree, order)]
    if identity == "bijection":
        top = min(order, b["brute"])
        return [partitions.gap_free_bijection_check(n) for n in range(1, top + 1)]
    if identity == "monotonicity":
        reports = [partitions.difference_monotone_check(order)] if order >= 2 else []
        top = min(order, b["brute"], opts.injection_max_n)
        reports += [partitions.monotonicity_injection_check(n) for n in range(1, top + 1)]
        return reports
    if identity == "pell-agreement":
        if order > b["pell"]:
            raise BudgetExceededError(f"bound {order} exceeds the Pell budget {b['pell']}")
        return pell.pell_agreement_check(order, b["pell"])
    raise ValueError(identity)


def _pell_provider(budget: dict):
    def provider(n: int) -> int:
        if abs(n) > budget["pell"]:
            raise BudgetExceededError(f"T({n}) exceeds the Pell budget {budget['pell']}")
        return pell.t_multiplicative(n)

    return provider


def parse_budget(items) -> dict:
    budget = dict(DEFAULT_BUDGET)
    for item in items or ():
        for piece in item.split(","):
            key, sep, value = piece.partition("=")
            key = key.strip()
            if not sep or key not in budget:
                raise argparse.ArgumentTypeError(f"bad budget entry {piece!r}; keys are {', '.join(budget)}")
            budget[key] = int(value)
    return budget


def _int_list(s: str) -> list[int]:
    return [int(x) for x in s.split(",") if x.strip()]


def _float_list(s: str) -> list[float]:
    return [float(x) for x in s.split(",") if x.strip()]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="maex", description="Maximal excludant identities: tables and verification.")
    sub = parser.add_subparsers(dest="command", required=True)

    t = sub.add_parser("table", help="tabulate a statistic")
    t.add_argument("--stat", required=True, choices=STATS)
    t.add_argument("--max-n", type=int, required=True)
    t.add_argument("--format", choices=("csv", "json"), default="csv")
    t.add_argument("--out")
    t.add_argument("--budget", action="append", metavar="KEY=N")

    v = sub.add_parser("verify", help="verify an identity")
    v.add_argument("--identity", required=True, choices=IDENTITIES)
    v.add_argument("--order", type=int)
    v.add_argument("--budget", action="append", metavar="KEY=N", help="brute=60,series=500,pell=4801")
    v.add_argument("--x-degree", type=int, default=6)
    v.add_argument("--y-degree", type=int, default=6)
    v.add_argument("--z-degree", type=int, default=8)
    v.add_argument("--specialization-order", type=int, default=200)
    v.add_argument("--injection-max-n", type=int, default=30, help="largest n for the enumerated injection check")
    v.add_argument("--timing", action="store_true", help="include wall-clock timing on stderr")

    a = sub.add_parser("asymptotics", help="asymptotic trend diagnostics")
    a.add_argument("--probe", type=_int_list, default=list(asymptotics.DEFAULT_PROBES))
    a.add_argument("--t-grid", type=_float_list, default=list(asymptotics.DEFAULT_T_GRID))
    a.add_argument("--timing", action="store_true")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        budget = parse_budget(getattr(args, "budget", None))
    except argparse.ArgumentTypeError as exc:
        parser.error(str(exc))

    if args.command == "table":
        if args.max_n < 1:
            parser.error("--max-n must be at least 1")
        try:
            rows = table_rows(args.stat, args.max_n, budget)
        except MaexError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 2
        text = format_table(args.stat, args.max_n, rows, args.format)
        if args.out:
            with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
        return 0

    if args.command == "verify":
        order = DEFAULT_ORDERS[args.identity] if args.order is None else args.order
        report = RunReport("verify", {"identity": args.identity, "order": order, "budget": budget})
        start = time.perf_counter()
        try:
            report.checks = run_identity(args.identity, order, budget, args)
        except (MaexError, ValueError) as exc:
            report.error = f"{type(exc).__name__}: {exc}"
        report.timing = {"seconds": round(time.perf_counter() - start, 3)}
    else:
        report = RunReport("asymptotics", {"probe": args.probe, "t_grid": args.t_grid})
        start = time.perf_counter()
        try:
            if not args.probe or min(args.probe) < 1:
                raise ValueError("probe points must be positive")
            report.checks = [
                asymptotics.trend_check("diff", args.probe),
                asymptotics.trend_check("sigmaL", args.probe),
                asymptotics.eta_inversion_check(args.t_grid),
            ]
        except (MaexError, ValueError) as exc:
            report.error = f"{type(exc).__name__}: {exc}"
        report.timing = {"seconds": round(time.perf_counter() - start, 3)}

    sys.stdout.write(report.to_json())
    if args.timing:
        print(json.dumps(report.timing), file=sys.stderr)
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
