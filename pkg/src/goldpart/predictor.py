"""Closed-form predictors for minimal-prime statistics.

rank_predictor gives the exact rational used to rank coefficient pairs; the
other helpers provide a finite prime-sum refinement of it, a Hardy-Littlewood
style partition-count estimate, and the normalized search-cost figure used to
compare the two scan directions of a pair.
"""
from __future__ import annotations

import math
from fractions import Fraction

from .errors import AdmissibilityError, RangeError
from .partitions import CoeffPair, is_admissible
from .primes import PrimeStore, factorize, primes_in_class_ascending

# Hardy-Littlewood twin-prime constant (10 digits; 0.66016 to the 5 shown in print)
TWIN_PRIME_CONSTANT = 0.6601618158

REFINED_LIMIT = 10 ** 7  # the refinement is a diagnostic; keep it small


def rank_predictor(pair: CoeffPair) -> Fraction:
    """Exact rational m2 * prod (s-2)/(s-1) over odd primes s dividing m1*m2."""
    val = Fraction(pair.m2)
    for s, _ in factorize(pair.m1 * pair.m2):
        if s > 2:
            val *= Fraction(s - 2, s - 1)
    return val


def refined_predictor(pair: CoeffPair, n: int, store: PrimeStore) -> float:
    """Finite refinement of rank_predictor at cutoff n, evaluated in floats.

    Product of (s-2)/(s-1) over primes s <= n not dividing n*m1*m2 times the
    sum of 1/(q-1) over primes q <= n not dividing n*m1, scaled by 1/m2.
    Primes are visited in ascending order.
    """
    if n < 3:
        raise RangeError(f"cutoff must be at least 3, got {n}")
    if n > REFINED_LIMIT:
        raise RangeError(f"refined predictor is capped at {REFINED_LIMIT}")
    m1, m2 = pair.m1, pair.m2
    prod = 1.0
    total = 0.0
    nm1m2 = n * m1 * m2
    nm1 = n * m1
    for p in primes_in_class_ascending(store, 1, 0, 2, stop=n):
        if nm1m2 % p:
            prod *= (p - 2) / (p - 1)
        if nm1 % p:
            total += 1.0 / (p - 1)
    return prod * total / m2


def euler_phi(m: int) -> int:
    """Euler's totient by trial-division factorization."""
    if m < 1:
        raise RangeError(f"phi needs a positive argument, got {m}")
    out = 1
    for p, a in factorize(m):
        out *= p ** (a - 1) * (p - 1)
    return out


def estimate_partition_count(pair: CoeffPair, n: int) -> float:
    """Hardy-Littlewood style estimate of the number of partitions of n.

    The correction product runs over the distinct odd primes dividing m1, m2
    or n; a prime dividing several of them still contributes one factor.
    """
    if n < 3:
        raise RangeError(f"estimate needs n >= 3, got {n}")
    if not is_admissible(pair, n):
        raise AdmissibilityError(f"n={n} is not admissible for ({pair.m1}, {pair.m2})")
    odd = {p for p, _ in factorize(pair.m1 * pair.m2) if p > 2}
    odd.update(p for p, _ in factorize(n) if p > 2)
    val = 2 * TWIN_PRIME_CONSTANT / (pair.m1 * pair.m2) * n / math.log(n) ** 2
    for p in sorted(odd):
        val *= (p - 1) / (p - 2)
    return val


def search_cost(pair: CoeffPair, avg_pmin: float) -> float:
    """Expected scan-length proxy avg / (phi(m2) * ln avg) for the pair's direction."""
    if avg_pmin <= 1.0:
        raise RangeError(f"average must exceed 1, got {avg_pmin}")
    return avg_pmin / (euler_phi(pair.m2) * math.log(avg_pmin))
