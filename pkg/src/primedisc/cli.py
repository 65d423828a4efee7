"""Command line interface.

Subcommands: gen (emit a sequence prefix), disc (exact discrepancy of a
prefix or a dump file), scan (per-prefix discrepancies as CSV), bounds
(whole-block weighted maxima against their budgets), verify (block-boundary
sweep), asym (Lambert W and growth-ratio tables).

Exit codes: 0 success, 1 runtime or data error, 2 usage error. All output
is deterministic: identical invocations produce identical bytes.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from fractions import Fraction
from typing import Iterable

from .asymptotics import (
    THEOREM_CSV_HEADER,
    lambert_w,
    m_asymptotic,
    theorem_csv_row,
    verify_theorem,
)
from .discrepancy import (
    DEFAULT_SWEEP_LIMIT,
    BlockSpec,
    block_max_weighted,
    nw_bound,
    prefix_scan,
    scan_csv_lines,
    star_discrepancy,
    star_discrepancy_arrays,
)
from .primes import (
    build_prime_table,
    is_prime,
    pnt_ratio,
    sieve_primes,
    sum_ratio,
    table_covering,
)
from .sequences import (
    Ordering,
    SequenceFamily,
    block_numerators,
    generate_prefix,
    parse_dump,
    prefix_arrays,
)


class UsageError(Exception):
    """A post-parse flag validation failure (exit code 2)."""


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from exc
    if value < 1:
        raise argparse.ArgumentTypeError(f"{text!r} must be >= 1")
    return value


def _parse_range(text: str) -> tuple[int, int]:
    lo_s, sep, hi_s = text.partition("..")
    if not sep:
        raise UsageError(f"range {text!r} must look like LO..HI")
    try:
        lo, hi = int(lo_s), int(hi_s)
    except ValueError as exc:
        raise UsageError(f"range {text!r} must contain integers") from exc
    if lo < 1 or hi < lo:
        raise UsageError(f"range {text!r} must satisfy 1 <= LO <= HI")
    return lo, hi


def _emit(lines: Iterable[str], out: str | None) -> None:
    if out is None:
        for line in lines:
            print(line)
        return
    with open(out, "w") as fh:
        for line in lines:
            fh.write(line)
            fh.write("\n")


def _family_table(family: SequenceFamily, n: int):
    if family is SequenceFamily.OMEGA:
        return None
    return table_covering(n)


def _cmd_gen(args: argparse.Namespace) -> list[str]:
    family = SequenceFamily(args.family)
    num, den = prefix_arrays(family, args.n, _family_table(family, args.n))
    lines: list[str] = []
    if args.header:
        lines.append(f"# family={family.value} N={args.n}")
    lines.extend(f"{a}/{b}" for a, b in zip(num.tolist(), den.tolist()))
    return lines


def _cmd_disc(args: argparse.Namespace) -> list[str]:
    if args.input is not None:
        with open(args.input) as fh:
            fracs = parse_dump(fh)
        if not fracs:
            raise ValueError(f"{args.input}: no fractions found")
        n = len(fracs)
        dv = star_discrepancy(fracs)
    else:
        if args.n is None:
            raise UsageError("--family requires --n")
        family = SequenceFamily(args.family)
        num, den = prefix_arrays(family, args.n, _family_table(family, args.n))
        n = args.n
        dv = star_discrepancy_arrays(num, den)
    if args.format == "csv":
        return [
            "n,disc_num,disc_den,disc_float,witness_num,witness_den,side",
            f"{n},{dv.num},{dv.den},{dv.approx:.17g},"
            f"{dv.witness_num},{dv.witness_den},{dv.side}",
        ]
    payload = {
        "n": n,
        "disc_num": dv.num,
        "disc_den": dv.den,
        "disc_float": dv.approx,
        "witness_num": dv.witness_num,
        "witness_den": dv.witness_den,
        "side": dv.side,
    }
    return [json.dumps(payload)]


def _cmd_scan(args: argparse.Namespace) -> list[str]:
    if args.prime is not None:
        if not is_prime(args.prime):
            raise UsageError(f"--prime {args.prime} is not a prime")
        ordering = Ordering(args.ordering)
        nums = block_numerators(args.prime, ordering)
        points = [(int(a), args.prime) for a in nums]
        if args.n is not None:
            if args.n > len(points):
                raise UsageError(
                    f"--n {args.n} exceeds the block size {len(points)}"
                )
            points = points[: args.n]
        records = prefix_scan(points)
    else:
        if args.n is None:
            raise UsageError("--family requires --n")
        family = SequenceFamily(args.family)
        fracs = generate_prefix(family, args.n, _family_table(family, args.n))
        records = prefix_scan(fracs)
    return list(scan_csv_lines(records))


def _cmd_bounds(args: argparse.Namespace) -> list[str]:
    if args.pmin < 2 or args.pmax < args.pmin:
        raise UsageError("need 2 <= pmin <= pmax")
    if args.pmax > args.sweep_limit:
        raise UsageError(
            f"--pmax {args.pmax} exceeds the sweep limit {args.sweep_limit}; "
            "raise --sweep-limit to proceed"
        )
    ordering = Ordering(args.ordering)
    primes = [int(p) for p in sieve_primes(args.pmax) if p >= args.pmin]
    if ordering is Ordering.INVERSIVE:
        lines = ["p,argmax_k,max_num,max_den,max_float,nw,within_nw"]
    else:
        lines = ["p,argmax_k,max_num,max_den,max_float,eighth_num,eighth_den,meets_eighth"]
    for p in primes:
        max_frac, arg_k = block_max_weighted(BlockSpec(p, ordering), args.sweep_limit)
        head = (
            f"{p},{arg_k},{max_frac.numerator},{max_frac.denominator},"
            f"{float(max_frac):.17g}"
        )
        if ordering is Ordering.INVERSIVE:
            nw = nw_bound(p, arg_k)
            ok = float(max_frac) <= nw
            lines.append(f"{head},{nw:.17g},{str(ok).lower()}")
        else:
            eighth = Fraction(p - 1, 8)
            ok = max_frac >= eighth
            lines.append(
                f"{head},{eighth.numerator},{eighth.denominator},{str(ok).lower()}"
            )
    return lines


def _cmd_verify(args: argparse.Namespace) -> list[str]:
    m_lo, m_hi = _parse_range(args.m)
    # one spare block keeps the boundary N = P(m_hi) strictly bracketed
    table = build_prime_table(m_hi + 1)
    rows = verify_theorem(table, m_lo, m_hi)
    lines = [THEOREM_CSV_HEADER + ",pnt_ratio,sum_ratio,m_est"]
    for r in rows:
        pnt = f"{pnt_ratio(table, r.m):.17g}" if r.m >= 2 else ""
        srt = f"{sum_ratio(table, r.m):.17g}" if r.m >= 2 else ""
        est = f"{m_asymptotic(r.n):.17g}" if r.n >= 2 else ""
        lines.append(f"{theorem_csv_row(r)},{pnt},{srt},{est}")
    return lines


def _cmd_asym(args: argparse.Namespace) -> list[str]:
    if args.x is not None:
        try:
            w = lambert_w(args.x)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
        residual = abs(w * math.exp(w) - args.x)
        return [json.dumps({"x": args.x, "w": w, "residual": residual})]
    if args.grid is not None:
        lo, hi, count_f = args.grid
        count = int(count_f)
        if count < 2 or hi <= lo:
            raise UsageError("--grid needs LO < HI and COUNT >= 2")
        lines = ["x,w,residual"]
        for i in range(count):
            x = lo + (hi - lo) * i / (count - 1)
            try:
                w = lambert_w(x)
            except ValueError as exc:
                raise UsageError(str(exc)) from exc
            residual = abs(w * math.exp(w) - x)
            lines.append(f"{x:.17g},{w:.17g},{residual:.17g}")
        return lines
    m_lo, m_hi = _parse_range(args.m_range)
    table = build_prime_table(m_hi)
    lines = ["m,p_m,P_m,pnt_ratio,sum_ratio,m_est"]
    for m in range(m_lo, m_hi + 1):
        p = table.primes[m - 1]
        pm = table.cumulative[m]
        pnt = f"{pnt_ratio(table, m):.17g}" if m >= 2 else ""
        srt = f"{sum_ratio(table, m):.17g}" if m >= 2 else ""
        est = f"{m_asymptotic(pm):.17g}" if pm >= 2 else ""
        lines.append(f"{m},{p},{pm},{pnt},{srt},{est}")
    return lines


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="primedisc",
        description="Exact star-discrepancy analysis of prime-block rational sequences.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    families = [f.value for f in SequenceFamily]
    orderings = [o.value for o in Ordering]

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--out", default=None, help="write output to this file")
        p.add_argument(
            "--threads",
            type=_positive_int,
            default=1,
            help="accepted for interface stability; evaluation is serial",
        )

    p_gen = sub.add_parser("gen", help="emit the first N elements as num/den lines")
    p_gen.add_argument("--family", choices=families, required=True)
    p_gen.add_argument("--n", type=_positive_int, required=True)
    p_gen.add_argument("--header", action="store_true", help="prepend a # comment line")
    common(p_gen)
    p_gen.set_defaults(handler=_cmd_gen)

    p_disc = sub.add_parser("disc", help="exact star discrepancy of a prefix or dump")
    src = p_disc.add_mutually_exclusive_group(required=True)
    src.add_argument("--input", help="dump file of num/den lines")
    src.add_argument("--family", choices=families)
    p_disc.add_argument("--n", type=_positive_int, default=None)
    p_disc.add_argument("--format", choices=["json", "csv"], default="json")
    common(p_disc)
    p_disc.set_defaults(handler=_cmd_disc)

    p_scan = sub.add_parser("scan", help="exact D_k* for every prefix, as CSV")
    src = p_scan.add_mutually_exclusive_group(required=True)
    src.add_argument("--prime", type=_positive_int)
    src.add_argument("--family", choices=families)
    p_scan.add_argument("--ordering", choices=orderings, default="inversive")
    p_scan.add_argument("--n", type=_positive_int, default=None)
    common(p_scan)
    p_scan.set_defaults(handler=_cmd_scan)

    p_bounds = sub.add_parser(
        "bounds", help="whole-block weighted maxima against their budgets"
    )
    p_bounds.add_argument("--pmin", type=_positive_int, default=2)
    p_bounds.add_argument("--pmax", type=_positive_int, required=True)
    p_bounds.add_argument("--ordering", choices=orderings, default="inversive")
    p_bounds.add_argument("--sweep-limit", type=_positive_int, default=DEFAULT_SWEEP_LIMIT)
    common(p_bounds)
    p_bounds.set_defaults(handler=_cmd_bounds)

    p_verify = sub.add_parser(
        "verify", help="exact boundary discrepancies for blocks LO..HI"
    )
    p_verify.add_argument("--m", required=True, help="block range LO..HI")
    common(p_verify)
    p_verify.set_defaults(handler=_cmd_verify)

    p_asym = sub.add_parser("asym", help="Lambert W values and growth ratios")
    mode = p_asym.add_mutually_exclusive_group(required=True)
    mode.add_argument("--x", type=float, default=None, help="single W(x) as JSON")
    mode.add_argument(
        "--grid",
        nargs=3,
        type=float,
        metavar=("LO", "HI", "COUNT"),
        default=None,
        help="evenly spaced W table as CSV",
    )
    mode.add_argument("--m-range", default=None, help="growth-ratio table for LO..HI")
    common(p_asym)
    p_asym.set_defaults(handler=_cmd_asym)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code is None else int(exc.code)
    try:
        _emit(args.handler(args), args.out)
        return 0
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except BrokenPipeError:
        return 1
    except (ValueError, ArithmeticError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
