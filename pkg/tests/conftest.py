"""Shared fixtures and independent oracles.

The oracle helpers below deliberately avoid the library's own prime and
partition machinery: they use plain trial division so that agreement tests
actually cross-check two unrelated implementations.

Environment gates: GOLDPART_MEDIUM=1 enables the 10^7-threshold tests
(minutes), GOLDPART_SLOW=1 enables the 10^9 reproduction tests (hours).
"""
import math
import os

import pytest

from goldpart import CoeffPair, PrimeStore

MEDIUM = os.environ.get("GOLDPART_MEDIUM") == "1"
SLOW = os.environ.get("GOLDPART_SLOW") == "1"

needs_medium = pytest.mark.skipif(
    not MEDIUM, reason="medium-runtime test; set GOLDPART_MEDIUM=1")
needs_slow = pytest.mark.skipif(
    not SLOW, reason="slow 10^9 reproduction; set GOLDPART_SLOW=1")


def trial_is_prime(n: int) -> bool:
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


def oracle_partitions(m1: int, m2: int, n: int) -> list[tuple[int, int]]:
    """All (p, q) with m1*p + m2*q = n, both prime, by unfiltered scan."""
    out = []
    for p in range(2, (n - 2 * m2) // m1 + 1):
        if not trial_is_prime(p):
            continue
        rem = n - m1 * p
        if rem % m2 == 0 and trial_is_prime(rem // m2):
            out.append((p, rem // m2))
    return out


def oracle_admissible(m1: int, m2: int, n: int) -> bool:
    return (math.gcd(n, m1) == 1 and math.gcd(n, m2) == 1
            and (n - m1 - m2) % 2 == 0)


def oracle_min_p(m1: int, m2: int, n: int):
    parts = oracle_partitions(m1, m2, n)
    return min(p for p, _ in parts) if parts else None


@pytest.fixture(scope="session")
def store():
    return PrimeStore(10 ** 6)


@pytest.fixture(scope="session")
def store_small():
    return PrimeStore(10 ** 4)


@pytest.fixture(scope="session")
def mr_store():
    return PrimeStore(10 ** 6, backing="deterministic-test")


def coprime_pairs(bound: int, include_1_1: bool = False) -> list[CoeffPair]:
    pairs = [CoeffPair(a, b)
             for a in range(1, bound + 1) for b in range(1, bound + 1)
             if a != b and math.gcd(a, b) == 1]
    if include_1_1:
        pairs.insert(0, CoeffPair(1, 1))
    return pairs
