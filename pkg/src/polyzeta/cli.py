"""Command-line entry point: ``polyzeta {closed,zeta,ska,tuples,verify}``.

Exit codes: 0 success (for verify: every quantity passes), 1 verification
failure, 2 invalid arguments or configuration.
"""

from __future__ import annotations

import argparse
import os
import sys
from typing import Optional, Sequence

from . import combinatorial, series
from .report import DEFAULT_A_LIST, build_report

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
TUPLE_CAP = 16
SEED_ENV = "POLYZETA_SEED"


class UsageError(Exception):
    pass


def _positive_int(text: str) -> int:
    """Integer flag that also accepts float spellings such as 1e6."""
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}")
    if not value.is_integer() or value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    return int(value)


def _default_seed() -> int:
    raw = os.environ.get(SEED_ENV)
    if raw is None:
        return 42
    try:
        seed = int(raw)
    except ValueError:
        raise UsageError(f"{SEED_ENV}={raw!r} is not an integer")
    if not 0 <= seed < 2**64:
        raise UsageError(f"{SEED_ENV} must be in [0, 2^64)")
    return seed


def _float_text(value: float, digits: int) -> str:
    return f"{value:.{min(digits, 17)}g}"


def cmd_closed(args) -> tuple[str, int]:
    s = combinatorial.s_k_closed(args.k)
    vol = combinatorial.volume_delta(args.k)
    return f"S({args.k}) = {s}\n  ≈ {s.decimal(args.digits)}\nVol(Delta^{args.k}) = {vol}", EXIT_OK


def cmd_zeta(args) -> tuple[str, int]:
    z = combinatorial.zeta_2k_closed(args.k)
    return f"zeta({2 * args.k}) = {z}\n  ≈ {z.decimal(args.digits)}", EXIT_OK


def cmd_ska(args) -> tuple[str, int]:
    if len(args.a) != 1:
        raise UsageError("ska takes exactly one --a")
    k, a = args.k, args.a[0]
    closed = {2: series.s_2a_closed, 3: series.s_3a_closed}.get(k)
    sv = series.s_ka_series(k, a, 1e-12)
    if closed is not None:
        return f"S({k},{a:g}) = {_float_text(closed(a), args.digits)}  (closed form)", EXIT_OK
    return (
        f"S({k},{a:g}) = {_float_text(sv.value, args.digits)}  (series, +/- {sv.tail_bound:.1e})",
        EXIT_OK,
    )


def cmd_tuples(args) -> tuple[str, int]:
    k = args.k
    if k < 2:
        raise UsageError("tuples needs k >= 2")
    if k > args.cap:
        raise UsageError(f"k = {k} exceeds the tuple listing cap {args.cap}")
    lines = []
    for n in range(1, k // 2 + 1):
        for t in combinatorial.enumerate_admissible(k, n):
            alphas = combinatorial.alpha_exponents(t)
            term = combinatorial.tuple_term(alphas)
            lines.append(f"{t.entries}  alpha={alphas}  term={term}")
    counts = combinatorial.tuple_counts(k)
    per_n = ", ".join(f"n={n}: {c}" for n, c in counts.items())
    lines.append(f"counts {per_n}; Vol(Delta^{k}) = {combinatorial.volume_delta(k)}")
    return "\n".join(lines), EXIT_OK


def cmd_verify(args) -> tuple[str, int]:
    report = build_report(
        k_max=args.k_max,
        a_list=args.a or DEFAULT_A_LIST,
        samples=args.samples,
        seed=args.seed,
        tol=args.tol,
    )
    if args.format == "json":
        text = report.to_json()
    elif args.format == "csv":
        text = report.to_csv().rstrip("\n")
    else:
        text = report.to_text(args.digits)
    return text, EXIT_OK if report.passed else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="polyzeta", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--digits", type=int, default=15, help="significant digits in decimal output")
    common.add_argument("--out", metavar="FILE", help="write output to FILE instead of stdout")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("closed", parents=[common], help="exact S(k) and the polytope volume")
    p.add_argument("--k", type=_positive_int, required=True)
    p.set_defaults(func=cmd_closed)

    p = sub.add_parser("zeta", parents=[common], help="exact zeta(2k) through S(2k)")
    p.add_argument("--k", type=_positive_int, required=True)
    p.set_defaults(func=cmd_zeta)

    p = sub.add_parser("ska", parents=[common], help="bilateral sum S(k, a)")
    p.add_argument("--k", type=_positive_int, required=True)
    p.add_argument("--a", type=float, action="append", required=True)
    p.set_defaults(func=cmd_ska)

    p = sub.add_parser("tuples", parents=[common], help="list admissible tuples with their terms")
    p.add_argument("--k", type=_positive_int, required=True)
    p.add_argument("--cap", type=_positive_int, default=TUPLE_CAP)
    p.set_defaults(func=cmd_tuples)

    p = sub.add_parser("verify", parents=[common], help="cross-check every route and report")
    p.add_argument("--k-max", type=_positive_int, default=6)
    p.add_argument("--a", type=float, action="append", help="repeatable; default 2 2.5 3 4 7.3")
    p.add_argument("--samples", type=_positive_int, default=1_000_000)
    p.add_argument("--seed", type=int, default=None, help=f"default ${SEED_ENV} or 42")
    p.add_argument("--tol", type=float, default=1e-8, help="tolerance for deterministic routes")
    p.add_argument("--format", choices=("text", "json", "csv"), default="text")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        if getattr(args, "seed", 0) is None:
            args.seed = _default_seed()
        if args.digits < 1 or args.digits > 30:
            raise UsageError("--digits must be between 1 and 30")
        text, code = args.func(args)
    except (UsageError, ValueError) as exc:
        print(f"polyzeta: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
