"""Primality answers and residue-class prime iteration.

PrimeStore is the single source of primality for the rest of the package.
It is backed either by an odd-only packed bitmap (values up to a configured
limit, memory permitting) or by a deterministic Miller-Rabin test that is
exact for every 64-bit integer.
"""
from __future__ import annotations

import math
from typing import Iterator

import numpy as np

from . import backend
from .errors import ConfigError, InvalidClassError, RangeError, ResourceError

DEFAULT_MEMORY_BUDGET = 256 * 1024 * 1024  # bytes allowed for the bitmap
DEFAULT_SEGMENT_SIZE = 1 << 22             # values per sieve segment

# Witnesses that make Miller-Rabin deterministic for all n < 2^64.
MR_WITNESSES = (2, 325, 9375, 28178, 450775, 9780504, 1795265022)

_U64_MAX = (1 << 64) - 1


def is_prime_u64(n: int) -> bool:
    """Deterministic Miller-Rabin for 0 <= n < 2^64."""
    if n >= 1 << 64:
        raise RangeError(f"{n} does not fit 64 bits; witnesses unproven there")
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in MR_WITNESSES:
        a %= n
        if a == 0:
            continue
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def primes_upto(n: int) -> np.ndarray:
    """All primes <= n as an int64 array (plain boolean sieve)."""
    if n > 10 ** 9:
        raise ResourceError(f"primes_upto({n}) would allocate too much; use PrimeStore")
    if n < 2:
        return np.empty(0, np.int64)
    sieve = np.ones(n + 1, dtype=bool)
    sieve[:2] = False
    for p in range(2, math.isqrt(n) + 1):
        if sieve[p]:
            sieve[p * p:: p] = False
    return np.flatnonzero(sieve).astype(np.int64)


def sieve_range(lo: int, hi: int, *, segment_size: int = DEFAULT_SEGMENT_SIZE) -> np.ndarray:
    """Primality of every integer in [lo, hi] as a boolean array.

    The window must fit in segment_size; this helper is independent of
    PrimeStore so the two can cross-check each other.
    """
    if lo < 0 or hi < lo:
        raise RangeError(f"bad window [{lo}, {hi}]")
    if hi - lo + 1 > segment_size:
        raise ResourceError(f"window of {hi - lo + 1} exceeds segment size {segment_size}")
    out = np.ones(hi - lo + 1, dtype=bool)
    for v in (0, 1):
        if lo <= v <= hi:
            out[v - lo] = False
    for p in primes_upto(math.isqrt(hi)):
        p = int(p)
        start = max(p * p, ((lo + p - 1) // p) * p)
        if start <= hi:
            out[start - lo:: p] = False
    return out


def factorize(n: int) -> list[tuple[int, int]]:
    """Trial-division factorization of n >= 1, smallest prime first."""
    if n < 1:
        raise RangeError(f"cannot factorize {n}")
    out: list[tuple[int, int]] = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            a = 0
            while n % d == 0:
                n //= d
                a += 1
            out.append((d, a))
        d += 1 if d == 2 else 2
    if n > 1:
        out.append((n, 1))
    return out


class PrimeStore:
    """Primality oracle with bitset or deterministic-test backing."""

    def __init__(self, limit: int, backing: str = "auto",
                 memory_budget: int = DEFAULT_MEMORY_BUDGET,
                 segment_size: int = DEFAULT_SEGMENT_SIZE):
        if limit < 2:
            raise ConfigError(f"limit must be at least 2, got {limit}")
        if segment_size < 256 or segment_size % 128:
            raise ConfigError("segment_size must be a multiple of 128 and at least 256")
        nbits = (limit + 1) // 2
        nwords = (nbits + 63) // 64
        need = nwords * 8
        if backing == "auto":
            backing = "bitset" if need <= memory_budget else "deterministic-test"
        if backing == "bitset":
            if need > memory_budget:
                raise ResourceError(
                    f"bitset for limit {limit} needs {need} bytes, budget is {memory_budget}")
        elif backing != "deterministic-test":
            raise ConfigError(f"unknown backing {backing!r}")
        self.limit = int(limit)
        self.backing = backing
        self.segment_size = int(segment_size)
        self.words: np.ndarray | None = None
        if backing == "bitset":
            words = np.full(nwords, np.uint64(0xFFFFFFFFFFFFFFFF), dtype=np.uint64)
            base = primes_upto(math.isqrt(limit))
            odd_base = base[base > 2]
            backend.kernels().fill_odd_bitmap(words, self.limit, odd_base, self.segment_size)
            self.words = words

    def is_prime(self, v: int) -> bool:
        if v < 2:
            return False
        if v == 2:
            return True
        if v % 2 == 0:
            return False
        if self.words is not None:
            if v > self.limit:
                raise RangeError(f"{v} exceeds bitset limit {self.limit}")
            i = v >> 1
            return bool((int(self.words[i >> 6]) >> (i & 63)) & 1)
        if v > _U64_MAX:
            raise RangeError(f"{v} does not fit 64 bits")
        return is_prime_u64(v)

    def is_prime_array(self, v: np.ndarray) -> np.ndarray:
        """Vectorized is_prime for int64 arrays (bitset backing only)."""
        if self.words is None:
            return np.fromiter((self.is_prime(int(x)) for x in v), dtype=bool, count=len(v))
        if v.size and int(v.max()) > self.limit:
            raise RangeError("value exceeds bitset limit")
        from .kernels_numpy import _prime_vec

        vv = v.astype(np.int64)
        out = _prime_vec(self.words, np.clip(vv, 2, None))
        out[vv < 2] = False
        return out


def _validate_class(m: int, r: int) -> None:
    if m < 1:
        raise InvalidClassError(f"modulus must be positive, got {m}")
    if m == 1:
        if r != 0:
            raise InvalidClassError("the only class mod 1 is r=0")
        return
    if not 0 <= r < m or math.gcd(r, m) != 1:
        raise InvalidClassError(f"({m}, {r}) is not a reduced residue class")


def primes_in_class_ascending(store: PrimeStore, m: int, r: int,
                              start: int = 2, stop: int | None = None) -> Iterator[int]:
    """Primes p ≡ r (mod m), p >= start, ascending; stop is inclusive.

    Candidates are stepped through the arithmetic progression and filtered
    through store.is_prime; nothing is precomputed per class.
    """
    _validate_class(m, r)
    lim = stop if stop is not None else (store.limit if store.words is not None else _U64_MAX)
    if store.words is not None:
        lim = min(lim, store.limit)
    if start <= 2 <= lim and 2 % m == r:
        yield 2
    base = max(3, start)
    if m == 1:
        v = base | 1
        step = 2
    else:
        step = m if m % 2 == 0 else 2 * m
        v = base + (r - base) % m
        if v % 2 == 0:
            v += m  # m is odd here: shift to the odd member of the class
    while v <= lim:
        if store.is_prime(v):
            yield v
        v += step


def primes_in_class_descending(store: PrimeStore, m: int, r: int, start: int) -> Iterator[int]:
    """Primes p ≡ r (mod m), p <= start, strictly descending down to 2."""
    _validate_class(m, r)
    if store.words is not None and start > store.limit:
        raise RangeError(f"start {start} exceeds bitset limit {store.limit}")
    if m == 1:
        v = start if start % 2 else start - 1
        step = 2
    else:
        step = m if m % 2 == 0 else 2 * m
        v = start - (start - r) % m
        if v % 2 == 0:
            v -= m  # m is odd here
    while v >= 3:
        if store.is_prime(v):
            yield v
        v -= step
    if start >= 2 and 2 % m == r:
        yield 2
