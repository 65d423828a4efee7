from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from primedisc.errors import CapacityError, TableTooSmallError
from primedisc.primes import (
    block_index_of,
    build_prime_table,
    cumulative_P,
    is_prime,
    pnt_ratio,
    sieve_primes,
    smallest_block_covering,
    sum_ratio,
    table_covering,
)


def trial_division_primes(count: int) -> list[int]:
    # independent oracle: no sieve, no shared code path
    found: list[int] = []
    n = 2
    while len(found) < count:
        if all(n % f for f in range(2, int(math.isqrt(n)) + 1)):
            found.append(n)
        n += 1
    return found


class TestSieve:
    def test_first_25_match_trial_division(self):
        expect = trial_division_primes(25)
        got = sieve_primes(expect[-1]).tolist()
        assert got == expect

    def test_empty_below_two(self):
        assert sieve_primes(1).size == 0
        assert sieve_primes(0).size == 0

    def test_is_prime_agrees_with_sieve(self):
        flags = set(sieve_primes(500).tolist())
        for n in range(502):
            assert is_prime(n) == (n in flags)


class TestBuildTable:
    def test_first_ten(self, table10):
        assert table10.primes == (2, 3, 5, 7, 11, 13, 17, 19, 23, 29)
        assert table10.cumulative == (0, 1, 3, 7, 13, 23, 35, 51, 69, 91, 119)

    def test_hundredth_prime(self, table100):
        assert table100.primes[99] == 541
        assert table100.cumulative[100] == 24033

    def test_against_trial_division(self):
        table = build_prime_table(60)
        assert list(table.primes) == trial_division_primes(60)

    def test_cumulative_is_running_sum(self, table100):
        total = 0
        for m, p in enumerate(table100.primes, start=1):
            total += p - 1
            assert table100.cumulative[m] == total

    def test_rejects_nonpositive_count(self):
        with pytest.raises(ValueError):
            build_prime_table(0)

    def test_single_block(self):
        table = build_prime_table(1)
        assert table.primes == (2,)
        assert table.coverage == 1

    def test_capacity_guard(self, monkeypatch):
        monkeypatch.setattr("primedisc.primes.INT64_MAX", 100)
        with pytest.raises(CapacityError):
            build_prime_table(20)


class TestCumulativeP:
    def test_examples(self, table10):
        assert cumulative_P(table10, 0) == 0
        assert cumulative_P(table10, 1) == 1
        assert cumulative_P(table10, 4) == 13
        assert cumulative_P(table10, 10) == 119

    def test_out_of_range(self, table10):
        with pytest.raises(ValueError):
            cumulative_P(table10, -1)
        with pytest.raises(ValueError):
            cumulative_P(table10, 11)


class TestBlockIndexOf:
    def test_examples(self, table10):
        assert block_index_of(table10, 7) == 3
        assert block_index_of(table10, 1) == 1
        assert block_index_of(table10, 2) == 1
        assert block_index_of(table10, 3) == 2
        assert block_index_of(table10, 118) == 9

    def test_bracket_invariant_exhaustive(self, table100):
        for n in range(1, table100.coverage):
            m = block_index_of(table100, n)
            assert table100.cumulative[m] <= n < table100.cumulative[m + 1]

    def test_rejects_uncovered(self, table10):
        with pytest.raises(TableTooSmallError):
            block_index_of(table10, table10.coverage)
        with pytest.raises(ValueError):
            block_index_of(table10, 0)

    def test_error_names_estimate(self, table10):
        with pytest.raises(TableTooSmallError) as exc:
            block_index_of(table10, 10**6)
        assert exc.value.required is not None
        assert exc.value.required > 10

    @given(st.integers(min_value=1, max_value=24032))
    def test_bracket_property(self, n):
        table = build_prime_table(100)
        m = block_index_of(table, n)
        assert table.cumulative[m] <= n < table.cumulative[m + 1]


class TestSmallestBlockCovering:
    def test_boundary_and_interior(self, table10):
        assert smallest_block_covering(table10, 1) == 1
        assert smallest_block_covering(table10, 2) == 2
        assert smallest_block_covering(table10, 7) == 3
        assert smallest_block_covering(table10, 8) == 4
        assert smallest_block_covering(table10, 119) == 10

    def test_rejects_uncovered(self, table10):
        with pytest.raises(TableTooSmallError):
            smallest_block_covering(table10, 120)


class TestTableCovering:
    @pytest.mark.parametrize("n", [1, 2, 7, 1000, 10**5])
    def test_covers(self, n):
        table = table_covering(n)
        assert table.coverage > n

    def test_rejects_nonpositive(self):
        with pytest.raises(ValueError):
            table_covering(0)


class TestRatios:
    def test_pnt_ratio_value(self, table100):
        assert pnt_ratio(table100, 100) == pytest.approx(
            541 / (100 * math.log(100)), rel=1e-15
        )

    def test_sum_ratio_value(self, table100):
        assert sum_ratio(table100, 100) == pytest.approx(
            24033 / (5000.0 * math.log(100)), rel=1e-15
        )

    def test_near_one_at_scale(self):
        # second-order corrections keep both ratios a little above 1 here;
        # only the band is asserted, not monotonicity
        table = build_prime_table(10**4)
        for k in (2, 3, 4):
            assert 1.0 < sum_ratio(table, 10**k) < 1.2
            assert 1.0 < pnt_ratio(table, 10**k) < 1.25

    def test_rejects_small_m(self, table10):
        for fn in (pnt_ratio, sum_ratio):
            with pytest.raises(ValueError):
                fn(table10, 1)
            with pytest.raises(TableTooSmallError):
                fn(table10, 11)


class TestNumpyCrossCheck:
    def test_cumulative_against_numpy(self):
        table = build_prime_table(2000)
        primes = np.array(table.primes, dtype=np.int64)
        csum = np.concatenate([[0], np.cumsum(primes - 1)])
        assert csum.tolist() == list(table.cumulative)
