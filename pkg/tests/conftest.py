from __future__ import annotations

import pytest

from primedisc.primes import build_prime_table


@pytest.fixture(scope="session")
def table10():
    return build_prime_table(10)


@pytest.fixture(scope="session")
def table100():
    return build_prime_table(100)
