"""Numba @njit kernels for the hot loops (sieve fill, minimal-prime scan).

Signatures and semantics match kernels_numpy exactly; tests compare the two
span by span.  All kernels release the GIL so pair sweeps can run in threads.
"""
from __future__ import annotations

import numpy as np
from numba import njit

_ONE = np.uint64(1)


@njit(cache=True, inline="always")
def _bit(words, v):
    # v: odd value >= 3 inside the bitmap range
    i = v >> 1
    return (words[i >> 6] >> np.uint64(i & 63)) & _ONE != 0


@njit(cache=True, nogil=True)
def fill_odd_bitmap(words, limit, base_primes, segment_values):
    nbits = (limit + 1) // 2
    words[0] = words[0] & ~_ONE  # 1 is not prime
    total_bits = words.shape[0] * 64
    for i in range(nbits, total_bits):  # zero the tail so packed tails compare equal
        words[i >> 6] = words[i >> 6] & ~(_ONE << np.uint64(i & 63))
    lo = 3
    while lo <= limit:
        hi = min(lo + segment_values, limit + 1)
        for k in range(base_primes.shape[0]):
            p = base_primes[k]
            pp = p * p
            if pp >= hi:
                break
            start = pp
            if start < lo:
                start = ((lo + p - 1) // p) * p
                if start % 2 == 0:
                    start += p
            for v in range(start, hi, 2 * p):
                i = v >> 1
                words[i >> 6] = words[i >> 6] & ~(_ONE << np.uint64(i & 63))
        lo = hi


@njit(cache=True, nogil=True)
def sweep_span(lo, hi, parity, m1, m2, rad, p0_tab, two_tab, step, words, cx_buf):
    ncx = 0
    count = 0
    sum_p = 0
    max_p = 0
    max_at = 0
    sum_q = 0
    max_q = 0
    max_q_at = 0
    n = lo
    if (n & 1) != parity:
        n += 1
    twom1 = 2 * m1
    twom2 = 2 * m2
    while n < hi:
        ok = True
        for k in range(rad.shape[0]):
            if n % rad[k] == 0:
                ok = False
                break
        if ok:
            nm = n % m2
            bound = n - twom2
            fp = 0
            fq = 0
            if two_tab[nm] == 1 and twom1 <= bound:
                q = (n - twom1) // m2
                if q == 2 or ((q & 1) == 1 and _bit(words, q)):
                    fp = 2
                    fq = q
            if fp == 0:
                p = p0_tab[nm]
                while m1 * p <= bound:
                    if _bit(words, p):
                        q = (n - m1 * p) // m2
                        if (q & 1) == 1:
                            if _bit(words, q):
                                fp = p
                                fq = q
                                break
                        elif q == 2:
                            fp = p
                            fq = q
                            break
                    p += step
            if fp == 0:
                if ncx < cx_buf.shape[0]:
                    cx_buf[ncx] = n
                ncx += 1
                count = 0
                sum_p = 0
                max_p = 0
                max_at = 0
                sum_q = 0
                max_q = 0
                max_q_at = 0
            else:
                count += 1
                sum_p += fp
                if fp > max_p:
                    max_p = fp
                    max_at = n
                sum_q += fq
                if fq > max_q:
                    max_q = fq
                    max_q_at = n
        n += 2
    return ncx, count, sum_p, max_p, max_at, sum_q, max_q, max_q_at
