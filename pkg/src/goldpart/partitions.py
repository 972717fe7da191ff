"""Two-prime partitions n = m1*p + m2*q and the minimal-p search.

An n is admissible for a coprime coefficient pair (m1, m2) when it is
coprime to both coefficients and n ≡ m1 + m2 (mod 2).  For admissible n the
p-minimal partition (equivalently the q-maximal one) is found by walking p
through the single residue class mod m2 that can carry a solution.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import AdmissibilityError, ConfigError, RangeError
from .primes import (PrimeStore, factorize, primes_in_class_ascending,
                     primes_in_class_descending)

# ceiling for the unfiltered oracle search; it exists to validate the fast path
BRUTEFORCE_LIMIT = 10 ** 7


@dataclass(frozen=True)
class CoeffPair:
    m1: int
    m2: int

    def __post_init__(self):
        if self.m1 < 1 or self.m2 < 1:
            raise ConfigError(f"coefficients must be positive: ({self.m1}, {self.m2})")
        if math.gcd(self.m1, self.m2) != 1:
            raise ConfigError(f"coefficients must be coprime: ({self.m1}, {self.m2})")

    def swapped(self) -> "CoeffPair":
        return CoeffPair(self.m2, self.m1)

    @property
    def token(self) -> str:
        return f"{self.m1}:{self.m2}"


@dataclass(frozen=True)
class PartitionOutcome:
    n: int
    p_min: int | None
    q_at_pmin: int | None

    @property
    def found(self) -> bool:
        return self.p_min is not None


def is_admissible(pair: CoeffPair, n: int) -> bool:
    """True when n can satisfy the pair's coprimality and parity conditions."""
    if n < 1:
        raise RangeError(f"n must be positive, got {n}")
    return (math.gcd(n, pair.m1) == 1 and math.gcd(n, pair.m2) == 1
            and (n - pair.m1 - pair.m2) % 2 == 0)


def _odd_radical(x: int) -> np.ndarray:
    return np.array([p for p, _ in factorize(x) if p > 2], dtype=np.int64)


@lru_cache(maxsize=2048)
def search_tables(m1: int, m2: int):
    """Per-pair scan tables, indexed by n % m2.

    p0_tab: first odd candidate >= 3 in the class that can carry a solution;
    two_tab: whether p = 2 lies in that class; step: stride of the odd
    progression; rad: distinct odd primes of m1*m2 (admissibility filter);
    parity: required n parity.
    """
    parity = (m1 + m2) % 2
    rad = _odd_radical(m1 * m2)
    if m2 == 1:
        return (np.array([3], np.int64), np.array([1], np.uint8), 2, rad, parity)
    inv = pow(m1, -1, m2)
    step = m2 if m2 % 2 == 0 else 2 * m2
    p0 = np.full(m2, 1 << 62, np.int64)  # sentinel: inadmissible residues never scan
    two = np.zeros(m2, np.uint8)
    for v in range(m2):
        if math.gcd(v, m2) != 1:
            continue
        r = v * inv % m2
        two[v] = 1 if 2 % m2 == r else 0
        c = r if m2 % 2 == 0 else (r if r % 2 == 1 else r + m2)
        while c < 3:
            c += step
        p0[v] = c
    return p0, two, step, rad, parity


def _require_admissible(pair: CoeffPair, n: int) -> None:
    if not is_admissible(pair, n):
        raise AdmissibilityError(f"n={n} is not admissible for ({pair.m1}, {pair.m2})")


def find_p_minimal(pair: CoeffPair, n: int, store: PrimeStore) -> PartitionOutcome:
    """Smallest prime p with n = m1*p + m2*q, q prime; congruence-filtered scan."""
    _require_admissible(pair, n)
    if store.words is not None and n > store.limit:
        raise RangeError(f"n={n} exceeds store limit {store.limit}")
    m1, m2 = pair.m1, pair.m2
    p0, two, step, _, _ = search_tables(m1, m2)
    bound = n - 2 * m2  # m1*p <= bound keeps q >= 2
    nm = n % m2
    if two[nm] and 2 * m1 <= bound:
        q = (n - 2 * m1) // m2
        if store.is_prime(q):
            return PartitionOutcome(n, 2, q)
    p = int(p0[nm])
    while m1 * p <= bound:
        if store.is_prime(p):
            q = (n - m1 * p) // m2
            if store.is_prime(q):
                return PartitionOutcome(n, p, q)
        p += step
    return PartitionOutcome(n, None, None)


def find_p_minimal_bruteforce(pair: CoeffPair, n: int, store: PrimeStore) -> PartitionOutcome:
    """Oracle: try every prime p ascending with no congruence filtering."""
    _require_admissible(pair, n)
    if n > BRUTEFORCE_LIMIT:
        raise RangeError(f"bruteforce oracle is capped at {BRUTEFORCE_LIMIT}")
    m1, m2 = pair.m1, pair.m2
    bound = (n - 2 * m2) // m1
    for p in primes_in_class_ascending(store, 1, 0, 2, stop=bound):
        rem = n - m1 * p
        if rem % m2 == 0 and store.is_prime(rem // m2):
            return PartitionOutcome(n, p, rem // m2)
    return PartitionOutcome(n, None, None)


def find_q_maximal_descending(pair: CoeffPair, n: int, store: PrimeStore) -> PartitionOutcome:
    """Same outcome as find_p_minimal, reached by walking q downward."""
    _require_admissible(pair, n)
    if store.words is not None and n > store.limit:
        raise RangeError(f"n={n} exceeds store limit {store.limit}")
    m1, m2 = pair.m1, pair.m2
    q_hi = (n - 2 * m1) // m2
    if q_hi < 2:
        return PartitionOutcome(n, None, None)
    if m1 == 1:
        it = primes_in_class_descending(store, 1, 0, q_hi)
    else:
        it = primes_in_class_descending(store, m1, n * pow(m2, -1, m1) % m1, q_hi)
    for q in it:
        p = (n - m2 * q) // m1
        if store.is_prime(p):
            return PartitionOutcome(n, p, q)
    return PartitionOutcome(n, None, None)
