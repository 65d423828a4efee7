"""Prime tables with cumulative block sizes and prime-counting diagnostics.

A table holds the first M primes together with the running totals
P(m) = sum_{k<=m} (p_k - 1), the lengths of concatenated blocks of proper
fractions with prime denominators. Everything is precomputed once so that
index queries are binary searches, not regenerations.
"""

from __future__ import annotations

import math
from bisect import bisect_left, bisect_right
from dataclasses import dataclass

import numpy as np

from .errors import CapacityError, TableTooSmallError

INT64_MAX = 2**63 - 1


def is_prime(n: int) -> bool:
    """Deterministic trial-division primality check."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def sieve_primes(limit: int) -> np.ndarray:
    """All primes <= limit in ascending order (Eratosthenes, numpy flags)."""
    if limit < 2:
        return np.empty(0, dtype=np.int64)
    flags = np.ones(limit + 1, dtype=bool)
    flags[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if flags[p]:
            flags[p * p :: p] = False
    return np.flatnonzero(flags).astype(np.int64)


def _nth_prime_limit(m: int) -> int:
    # p_m < m (ln m + ln ln m) holds for m >= 6; a constant covers small m
    if m < 6:
        return 13
    x = float(m)
    return int(x * (math.log(x) + math.log(math.log(x)))) + 1


def required_blocks_estimate(n: int) -> int:
    """Rough number of blocks M needed for P(M) to exceed n (with headroom)."""
    if n < 4:
        return 4
    return int(2.0 * math.sqrt(n / math.log(n)) * 1.3) + 8


@dataclass(frozen=True)
class PrimeTable:
    """First M primes plus cumulative block sizes.

    ``cumulative[m]`` is P(m) with P(0) = 0, so the tuple has M + 1 entries
    and is strictly increasing. Instances are immutable and safe to share
    across threads.
    """

    primes: tuple[int, ...]
    cumulative: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.primes)

    @property
    def coverage(self) -> int:
        """P(M): total length of every block the table can generate."""
        return self.cumulative[-1]


def build_prime_table(m_count: int) -> PrimeTable:
    """Sieve the first m_count primes and precompute their running totals."""
    if m_count < 1:
        raise ValueError("m_count must be >= 1")
    limit = _nth_prime_limit(m_count)
    primes = sieve_primes(limit)
    while len(primes) < m_count:  # the limit is proven for m >= 6; retry is a safety net
        limit *= 2
        primes = sieve_primes(limit)
    head = [int(p) for p in primes[:m_count]]
    cumulative = [0]
    total = 0
    for p in head:
        total += p - 1
        if total > INT64_MAX:
            raise CapacityError(
                f"P({len(cumulative)}) = {total} exceeds the 64-bit budget"
            )
        cumulative.append(total)
    return PrimeTable(tuple(head), tuple(cumulative))


def table_covering(n: int) -> PrimeTable:
    """A table sized so that P(M) > n, grown from the asymptotic estimate."""
    if n < 1:
        raise ValueError("n must be >= 1")
    m = required_blocks_estimate(n)
    table = build_prime_table(m)
    while table.coverage <= n:
        m *= 2
        table = build_prime_table(m)
    return table


def cumulative_P(table: PrimeTable, m: int) -> int:
    """P(m) for 0 <= m <= M."""
    if not 0 <= m <= len(table):
        raise ValueError(f"m={m} outside [0, {len(table)}]")
    return table.cumulative[m]


def block_index_of(table: PrimeTable, n: int) -> int:
    """The unique m with P(m) <= n < P(m+1), found by binary search."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if n >= table.coverage:
        raise TableTooSmallError(
            f"n={n} is not bracketed by a table with M={len(table)} blocks "
            f"(P(M)={table.coverage}); about {required_blocks_estimate(n)} "
            "blocks are required",
            required=required_blocks_estimate(n),
        )
    return bisect_right(table.cumulative, n) - 1


def smallest_block_covering(table: PrimeTable, n: int) -> int:
    """The smallest m with P(m) >= n (the block that finishes covering n)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if n > table.coverage:
        raise TableTooSmallError(
            f"n={n} exceeds P(M)={table.coverage} with M={len(table)} blocks; "
            f"about {required_blocks_estimate(n)} blocks are required",
            required=required_blocks_estimate(n),
        )
    return bisect_left(table.cumulative, n)


def pnt_ratio(table: PrimeTable, m: int) -> float:
    """p_m / (m ln m), the prime-number-theorem ratio (tends to 1)."""
    if m < 2:
        raise ValueError("m must be >= 2 (ln m must be positive)")
    if m > len(table):
        raise TableTooSmallError(f"table has {len(table)} blocks, need {m}")
    return table.primes[m - 1] / (m * math.log(m))


def sum_ratio(table: PrimeTable, m: int) -> float:
    """P(m) / ((m^2 / 2) ln m), the cumulative-sum ratio (tends to 1)."""
    if m < 2:
        raise ValueError("m must be >= 2 (ln m must be positive)")
    if m > len(table):
        raise TableTooSmallError(f"table has {len(table)} blocks, need {m}")
    return table.cumulative[m] / ((m * m / 2.0) * math.log(m))
