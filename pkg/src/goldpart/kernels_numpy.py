"""Pure-numpy kernels: vectorized fallback for the hot loops.

Same signatures and semantics as kernels_numba.  The primality bitmap is an
odd-only packed array of uint64 words: bit k (little-endian within a word)
says whether the odd value 2k+1 is prime.  Packing relies on a little-endian
platform (np.packbits little bit order viewed as uint64).
"""
from __future__ import annotations

import numpy as np


def _prime_vec_odd(words: np.ndarray, v: np.ndarray) -> np.ndarray:
    # v: odd values >= 3
    i = v >> 1
    return (words[i >> 6] >> (i & 63).astype(np.uint64)) & np.uint64(1) != 0


def _prime_vec(words: np.ndarray, v: np.ndarray) -> np.ndarray:
    # v: values >= 2 of either parity; even values are prime only for 2
    odd = (v & 1) != 0
    out = v == 2
    if odd.any():
        out[odd] = _prime_vec_odd(words, v[odd])
    return out


def fill_odd_bitmap(words: np.ndarray, limit: int, base_primes: np.ndarray,
                    segment_values: int) -> None:
    """Sieve odd composites out of a pre-set-to-ones packed bitmap."""
    nbits = (limit + 1) // 2
    seg_bits = segment_values // 2
    # block boundaries must fall on word boundaries for the packed copy
    assert seg_bits % 64 == 0
    buf = np.empty(seg_bits, dtype=bool)
    for b0 in range(0, nbits, seg_bits):
        cnt = min(seg_bits, nbits - b0)
        block = buf[:cnt]
        block[:] = True
        n0 = 2 * b0 + 1
        n1 = 2 * (b0 + cnt - 1) + 1
        if b0 == 0:
            block[0] = False  # 1 is not prime
        for p in base_primes:
            p = int(p)
            pp = p * p
            if pp > n1:
                break
            start = pp if pp >= n0 else ((n0 + p - 1) // p) * p
            if start % 2 == 0:
                start += p
            if start > n1:
                continue
            block[(start - n0) // 2::p] = False
        packed = np.packbits(block, bitorder="little")
        if packed.size % 8:
            packed = np.concatenate([packed, np.zeros(8 - packed.size % 8, np.uint8)])
        w = packed.view(np.uint64)
        words[b0 // 64: b0 // 64 + w.size] = w


def sweep_span(lo: int, hi: int, parity: int, m1: int, m2: int,
               rad: np.ndarray, p0_tab: np.ndarray, two_tab: np.ndarray,
               step: int, words: np.ndarray, cx_buf: np.ndarray):
    """Minimal-prime scan of admissible n in [lo, hi).

    Returns (ncx, count, sum_p, max_p, max_at, sum_q, max_q, max_q_at) where
    the statistics cover only the admissible n after the last counterexample
    found inside this span (all of them when the span has none).  The first
    min(ncx, len(cx_buf)) counterexamples are written to cx_buf ascending.
    """
    first = lo + ((parity - lo) & 1)
    ns = np.arange(first, hi, 2, dtype=np.int64)
    if rad.size and ns.size:
        keep = np.ones(ns.size, dtype=bool)
        for rp in rad:
            keep &= ns % rp != 0
        ns = ns[keep]
    if ns.size == 0:
        return 0, 0, 0, 0, 0, 0, 0, 0
    pstar = np.zeros(ns.size, np.int64)
    qstar = np.zeros(ns.size, np.int64)
    nm = ns % m2
    bound = ns - 2 * m2
    # p = 2 is the one candidate the odd progression cannot reach
    front = (two_tab[nm] != 0) & (2 * m1 <= bound)
    if front.any():
        fi = np.flatnonzero(front)
        q = (ns[fi] - 2 * m1) // m2
        good = _prime_vec(words, q)
        fi = fi[good]
        pstar[fi] = 2
        qstar[fi] = q[good]
    active = np.flatnonzero(pstar == 0)
    p_cur = p0_tab[nm[active]]
    while active.size:
        alive = m1 * p_cur <= ns[active] - 2 * m2
        if not alive.all():
            active = active[alive]
            p_cur = p_cur[alive]
            if active.size == 0:
                break
        isp = _prime_vec_odd(words, p_cur)
        if isp.any():
            cand = np.flatnonzero(isp)
            q = (ns[active[cand]] - m1 * p_cur[cand]) // m2
            qp = _prime_vec(words, q)
            hit = cand[qp]
            if hit.size:
                gi = active[hit]
                pstar[gi] = p_cur[hit]
                qstar[gi] = q[qp]
                keep = np.ones(active.size, dtype=bool)
                keep[hit] = False
                active = active[keep]
                p_cur = p_cur[keep]
        p_cur = p_cur + step
    cx = ns[pstar == 0]
    ncx = int(cx.size)
    if ncx:
        m = min(ncx, cx_buf.shape[0])
        cx_buf[:m] = cx[:m]
        wstart = int(np.searchsorted(ns, cx[-1])) + 1
        wn, wp, wq = ns[wstart:], pstar[wstart:], qstar[wstart:]
    else:
        wn, wp, wq = ns, pstar, qstar
    count = int(wp.size)
    if count == 0:
        return ncx, 0, 0, 0, 0, 0, 0, 0
    ap = int(np.argmax(wp))
    aq = int(np.argmax(wq))
    return (ncx, count, int(wp.sum()), int(wp[ap]), int(wn[ap]),
            int(wq.sum()), int(wq[aq]), int(wn[aq]))
