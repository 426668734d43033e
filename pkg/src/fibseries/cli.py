"""Command line entry point.

Exit codes: 0 success, 1 a mathematical check failed, 2 usage error,
3 I/O or other operational error, 4 memory budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction

from . import stats as dens
from . import serialize
from .checks import run_checks
from .engine import coefficient, trace
from .expander import BudgetExceeded, expand, memory_budget
from .fib import fib
from .oracle import DEFAULT_ENUM_LIMIT

EXIT_OK, EXIT_FALSIFIED, EXIT_USAGE, EXIT_IO, EXIT_BUDGET = 0, 1, 2, 3, 4

_DIGITS = re.compile(r"[0-9]+")

if hasattr(sys, "set_int_max_str_digits"):
    # positions of any length must parse and print
    sys.set_int_max_str_digits(0)


def _natural(text: str) -> int:
    if not _DIGITS.fullmatch(text.strip()):
        raise argparse.ArgumentTypeError(f"not a non-negative integer: {text!r}")
    return int(text)


def _positive_float(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not value > 0:
        raise argparse.ArgumentTypeError(f"must be positive: {text!r}")
    return value


def cmd_coeff(args, out) -> int:
    if args.steps:
        for step in trace(args.m):
            out.write(f"{step}\n")
    out.write(f"{coefficient(args.m)}\n")
    return EXIT_OK


def cmd_expand(args, out) -> int:
    arr = expand(args.N)
    if args.out is None or args.out == "-":
        serialize.write(arr, out, args.format)
    else:
        with open(args.out, "w", encoding="ascii", newline="") as fh:
            serialize.write(arr, fh, args.format)
    return EXIT_OK


def cmd_verify(args, out) -> int:
    results = run_checks(args.N, args.enumerate_limit, seed=args.seed, jobs=args.jobs)
    for res in results:
        status = "PASS" if res.ok else "FAIL"
        out.write(f"{res.name:<22} {status} passed={res.passed} failed={res.failed}\n")
        for msg in res.failures:
            out.write(f"    {msg}\n")
    ok = all(r.ok for r in results)
    out.write(f"positions 0..{args.N}: {'all checks pass' if ok else 'CHECKS FAILED'}\n")
    return EXIT_OK if ok else EXIT_FALSIFIED


def _stats_rows(n_max: int, direct_max: int):
    alpha = dens.alpha_recurrence(n_max + 1)
    direct: dict[int, int] = {}
    top = min(direct_max, n_max)
    while top >= 2 and fib(top) > memory_budget():
        top -= 1
    if top >= 2:
        nz = expand(fib(top) - 1).to_numpy() != 0
        for n in range(2, top + 1):
            direct[n] = int(nz[: fib(n)].sum())
    rows = []
    for n in range(2, n_max + 1):
        fn = fib(n)
        p = 1 - Fraction(alpha[n], fn)
        recur = None
        if n >= 6:
            recur = alpha[n] - alpha[n - 1] == 2 * alpha[n - 4] - 1
        rows.append(
            {
                "n": n,
                "F_n": fn,
                "alpha": alpha[n],
                "alpha_direct": direct.get(n),
                "p": p,
                "recurrence_ok": recur,
                "alpha_ratio": Fraction(alpha[n + 1], alpha[n]),
                "fib_ratio": Fraction(fib(n + 1), fn),
                "alpha_over_F": Fraction(alpha[n], fn),
            }
        )
    return rows


def cmd_stats(args, out) -> int:
    rows = _stats_rows(args.n_max, args.direct_max)
    roots = dens.char_roots(1e-12)
    falsified = any(r["recurrence_ok"] is False for r in rows) or any(
        r["alpha_direct"] is not None and r["alpha_direct"] != r["alpha"] for r in rows
    )
    rd = dens.render_decimal
    if args.format == "json":
        doc = {
            "rows": [
                {
                    "n": r["n"],
                    "F_n": str(r["F_n"]),
                    "alpha": r["alpha"],
                    "alpha_direct": r["alpha_direct"],
                    "p": str(r["p"]),
                    "p_decimal": rd(r["p"]),
                    "recurrence_ok": r["recurrence_ok"],
                    "alpha_ratio": rd(r["alpha_ratio"]),
                    "fib_ratio": rd(r["fib_ratio"]),
                    "alpha_over_F": rd(r["alpha_over_F"]),
                }
                for r in rows
            ],
            "r1": f"{roots.r1:.6f}",
            "lambda": f"{roots.lambda_:.6f}",
        }
        out.write(json.dumps(doc, indent=1) + "\n")
    else:
        header = ("n", "F_n", "alpha", "direct", "p", "p~", "rec", "a_ratio", "F_ratio", "alpha/F")
        out.write("\t".join(header) + "\n")
        for r in rows:
            cells = (
                r["n"],
                r["F_n"],
                r["alpha"],
                "-" if r["alpha_direct"] is None else r["alpha_direct"],
                r["p"],
                rd(r["p"]),
                {None: "-", True: "ok", False: "FAIL"}[r["recurrence_ok"]],
                rd(r["alpha_ratio"]),
                rd(r["fib_ratio"]),
                rd(r["alpha_over_F"]),
            )
            out.write("\t".join(str(c) for c in cells) + "\n")
        out.write(f"r1 = {roots.r1:.6f}  lambda = {roots.lambda_:.6f}\n")
    return EXIT_FALSIFIED if falsified else EXIT_OK


def cmd_roots(args, out) -> int:
    roots = dens.char_roots(args.tol)
    below = roots.r1 < roots.lambda_
    out.write(f"r1 = {roots.r1!r}\n")
    out.write(f"residual = {roots.residual:.3e}\n")
    out.write(f"p(-1) = {dens.char_poly(-1)}\n")
    out.write(f"lambda = {roots.lambda_!r}\n")
    out.write(f"r1 < lambda: {below}\n")
    return EXIT_OK if below else EXIT_FALSIFIED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fibseries",
        description="Coefficients of prod_{k>=2} (1 - x^F_k).",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("coeff", help="print a(M)")
    p.add_argument("m", type=_natural, metavar="M")
    p.add_argument("--steps", action="store_true", help="print the reduction path first")
    p.set_defaults(func=cmd_coeff)

    p = sub.add_parser("expand", help="write a(0..N)")
    p.add_argument("N", type=_natural)
    p.add_argument("--format", choices=serialize.FORMATS, default="bfile")
    p.add_argument("--out", default=None, metavar="PATH")
    p.set_defaults(func=cmd_expand)

    p = sub.add_parser("verify", help="cross-check engine, expansion and oracles up to N")
    p.add_argument("N", type=_natural)
    p.add_argument("--enumerate-limit", type=_natural, default=DEFAULT_ENUM_LIMIT, metavar="L")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("stats", help="non-zero counts and zero density per interval")
    p.add_argument("n_max", type=_natural, metavar="NMAX")
    p.add_argument("--format", choices=("table", "json"), default="table")
    p.add_argument("--direct-max", type=_natural, default=30, help="largest n to count directly")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("roots", help="dominant root of x^4 - x^3 - 2")
    p.add_argument("--tol", type=_positive_float, default=1e-12)
    p.set_defaults(func=cmd_roots)
    return parser


def main(argv: list[str] | None = None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    if args.command == "stats" and args.n_max < 5:
        print("fibseries: stats requires NMAX >= 5", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args, out)
    except BudgetExceeded as exc:
        print(f"fibseries: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except OSError as exc:
        print(f"fibseries: {exc}", file=sys.stderr)
        return EXIT_IO
    except ValueError as exc:
        print(f"fibseries: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
