"""Lambert W, prime-sum growth ratios, and the boundary discrepancy sweep.

The block count m needed for N elements grows like 2 sqrt(N / ln N); the
inverse direction runs through the principal branch of Lambert W, which is
implemented here with a Halley iteration and verified against the defining
identity W e^W = x rather than against tabulated values.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Iterator

import numpy as np

from .discrepancy import BlockAccumulator, DiscrepancyValue
from .errors import TableTooSmallError
from .primes import PrimeTable, cumulative_P

_RESIDUAL_TOL = 1e-12


def lambert_w(x: float) -> float:
    """Principal-branch W(x) for x >= -1/e by Halley iteration.

    Start values: ln x - ln ln x for x > e, a branch-point series for
    x < -1/4, and x itself in between. The result satisfies
    |W e^W - x| <= 1e-12 * max(1, |x|); ArithmeticError otherwise,
    ValueError outside the domain.
    """
    x = float(x)
    if math.isnan(x):
        raise ValueError("x is NaN")
    t = math.e * x + 1.0  # scaled distance above the branch point -1/e
    if t < -1e-12:
        raise ValueError(f"x={x} is below -1/e, outside the principal branch")
    if x == 0.0:
        return 0.0
    if t < 1e-12:
        # so close to the branch point that w = -1 already meets the
        # residual contract; the iteration would stall here
        return -1.0
    if x > math.e:
        lx = math.log(x)
        w = lx - math.log(lx)
    elif x < -0.25:
        q = math.sqrt(2.0 * t)
        w = -1.0 + q * (1.0 + q * (-1.0 / 3.0 + q * (11.0 / 72.0)))
    else:
        w = x
    for _ in range(50):
        ew = math.exp(w)
        f = w * ew - x
        if f == 0.0:
            break
        wp1 = w + 1.0
        step = f / (ew * wp1 - (w + 2.0) * f / (2.0 * wp1))
        w -= step
        if abs(step) <= 1e-15 * (1.0 + abs(w)):
            break
    if abs(w * math.exp(w) - x) > _RESIDUAL_TOL * max(1.0, abs(x)):
        raise ArithmeticError(f"Halley iteration did not converge for x={x}")
    return w


def lambert_identity_residual(x: float) -> float:
    """Relative defect of e^W(x) = x / W(x); tiny wherever W is accurate."""
    if x == 0.0:
        raise ValueError("the identity is undefined at x = 0")
    w = lambert_w(x)
    ratio = x / w
    return abs(math.exp(w) - ratio) / max(1.0, abs(ratio))


def m_asymptotic(n: int) -> float:
    """Leading-order block count 2 sqrt(n / ln n) for an n-element prefix."""
    if n < 2:
        raise ValueError("n must be >= 2")
    return 2.0 * math.sqrt(n / math.log(n))


def scaled_discrepancy(n: int, disc) -> float:
    """sqrt(n ln n) * D, the quantity that stays bounded for the eta family.

    disc may be a DiscrepancyValue or anything float() accepts.
    """
    if n < 2:
        raise ValueError("n must be >= 2")
    value = disc.approx if isinstance(disc, DiscrepancyValue) else float(disc)
    return math.sqrt(n * math.log(n)) * value


@dataclass(frozen=True)
class TheoremRow:
    """One boundary prefix N = P(m): exact D_N* next to the 1/(2 p_m) witness."""

    m: int
    n: int
    p: int
    disc: DiscrepancyValue
    scaled: float | None  # sqrt(N ln N) * D, None for N < 2
    lower_num: int
    lower_den: int


THEOREM_CSV_HEADER = "m,N,p_m,disc_num,disc_den,disc_float,scaled,lower_num,lower_den"


def verify_theorem(table: PrimeTable, m_lo: int, m_hi: int) -> list[TheoremRow]:
    """Exact D_N* at every block boundary N = P(m) for m in [m_lo, m_hi].

    One sorted multiset is extended block by block instead of regenerating
    each prefix. At a boundary every block is complete, so the multiset
    {j/p_k : k <= m} alone determines D_N* and the inversive permutation
    never needs to be applied. Each row is checked against its witness
    threshold r = 1 - 1/(2 p_m), which forces D_N* >= 1/(2 p_m); a row
    below that raises ArithmeticError (engine inconsistency).
    """
    if m_lo < 1 or m_lo > m_hi:
        raise ValueError(f"need 1 <= m_lo <= m_hi, got {m_lo}..{m_hi}")
    if m_hi > len(table):
        raise TableTooSmallError(
            f"table has {len(table)} blocks, need {m_hi}", required=m_hi
        )
    acc = BlockAccumulator()
    rows: list[TheoremRow] = []
    for m in range(1, m_hi + 1):
        p = table.primes[m - 1]
        acc.add_block(np.arange(1, p, dtype=np.int64), p)
        if m < m_lo:
            continue
        n = cumulative_P(table, m)
        dv = acc.star_discrepancy()
        if dv.num * 2 * p < dv.den:
            raise ArithmeticError(
                f"D_N* < 1/(2 p_m) at m={m}; discrepancy engine inconsistency"
            )
        scaled = scaled_discrepancy(n, dv) if n >= 2 else None
        rows.append(TheoremRow(m, n, p, dv, scaled, 1, 2 * p))
    return rows


def theorem_csv_row(r: TheoremRow) -> str:
    """One theorem row as CSV (17 significant digits for floats)."""
    scaled = "" if r.scaled is None else f"{r.scaled:.17g}"
    return (
        f"{r.m},{r.n},{r.p},{r.disc.num},{r.disc.den},{r.disc.approx:.17g},"
        f"{scaled},{r.lower_num},{r.lower_den}"
    )


def theorem_csv_lines(rows: Iterable[TheoremRow]) -> Iterator[str]:
    """Render theorem rows as CSV with the standard header."""
    yield THEOREM_CSV_HEADER
    for r in rows:
        yield theorem_csv_row(r)
