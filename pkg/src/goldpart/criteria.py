"""Residue-class criteria equivalent to membership in a two-prime partition.

For coprime (m1, m2) and admissible n, primes p and q satisfy
n = m1*p + m2*q exactly when one of two condition groups holds.  With
f(mod) = n * m1^(-1) reduced mod `mod`:

Group 1, for q dividing neither coefficient:
  (a) q does not divide m2 and does not divide m1;
  (b) for every prime power r^a || m2: p mod r^(a+1) lies in one of the r-1
      classes f(r^(a+1)) + j*r^a, j = 1..r-1;
  (c) p mod q^2 lies in one of the q-1 classes f(q^2) + l*q, l = 1..q-1;
  (d) for every prime s < K with s != q, s not dividing m1 or m2:
      p mod s differs from f(s).

Group 2, for q | m2 (and q not dividing m1), where q = r_l in the
factorization of m2:
  (e) q divides m2 and does not divide m1;
  (f) condition (b) restricted to the prime powers r^a || m2 with r != q;
  (g) p mod q^(a+2) lies in one of the q-1 classes f(q^(a+2)) + j*q^(a+1);
  (h) for every prime s < K not dividing m1 or m2: p mod s differs from f(s).

K can be any integer >= n/m2; the default is ceil(n/m2) and results must not
depend on the choice.  Membership is tested by direct modular arithmetic on
p, never by re-deriving divisibility facts about n - m1*p, so the check is
independent of the reasoning that motivates the conditions.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigError, InputError, RangeError
from .partitions import CoeffPair, is_admissible
from .primes import factorize, is_prime_u64, primes_upto

VERIFY_LIMIT = 10 ** 4  # the exhaustive oracle is a small-instance tool
FAULT_KEYS = ("a", "b", "c", "d", "f", "g", "h")


def default_K(n: int, m2: int) -> int:
    return -(-n // m2)


@dataclass(frozen=True)
class ConditionReport:
    m1: int
    m2: int
    n: int
    p: int
    q: int
    K: int
    case: str  # "group1" | "group2" | "neither"
    satisfied: dict = field(compare=False)
    equation_holds: bool

    @property
    def conditions_hold(self) -> bool:
        return self.case != "neither" and all(self.satisfied.values())


@dataclass
class EquivalenceReport:
    m1: int
    m2: int
    n_max: int
    K_factor: int
    tuples_checked: int
    violations: list  # (n, p, q, equation_holds, conditions_hold)

    @property
    def ok(self) -> bool:
        return not self.violations


def _f(n: int, m1: int, mod: int) -> int:
    return n % mod * pow(m1, -1, mod) % mod


def check_conditions(m1: int, m2: int, n: int, p: int, q: int,
                     K: int | None = None) -> ConditionReport:
    """Evaluate the condition group selected by q for one (n, p, q) tuple."""
    pair = CoeffPair(m1, m2)  # validates coprimality/positivity
    if not is_admissible(pair, n):
        raise InputError(f"n={n} is not admissible for ({m1}, {m2})")
    if not (is_prime_u64(p) and is_prime_u64(q)):
        raise InputError("p and q must be prime")
    if K is None:
        K = default_K(n, m2)
    elif K < default_K(n, m2):
        raise ConfigError(f"K={K} is below n/m2")
    equation = m1 * p + m2 * q == n
    sat: dict[str, bool] = {}
    if m2 % q == 0 and m1 % q != 0:
        case = "group2"
        sat["e"] = True
        ok = True
        for r, a in factorize(m2):
            if r == q:
                mod = r ** (a + 2)
                fv = _f(n, m1, mod)
                reps = {(fv + j * r ** (a + 1)) % mod for j in range(1, r)}
                sat["g"] = p % mod in reps
            else:
                mod = r ** (a + 1)
                fv = _f(n, m1, mod)
                reps = {(fv + j * r ** a) % mod for j in range(1, r)}
                if p % mod not in reps:
                    ok = False
        sat["f"] = ok
        sat["h"] = _no_forbidden_residue(m1, m2, n, p, K, skip=0)
    elif m2 % q != 0 and m1 % q != 0:
        case = "group1"
        sat["a"] = True
        ok = True
        for r, a in factorize(m2):
            mod = r ** (a + 1)
            fv = _f(n, m1, mod)
            reps = {(fv + j * r ** a) % mod for j in range(1, r)}
            if p % mod not in reps:
                ok = False
        sat["b"] = ok
        mod = q * q
        d = (p - _f(n, m1, mod)) % mod
        sat["c"] = d != 0 and d % q == 0
        sat["d"] = _no_forbidden_residue(m1, m2, n, p, K, skip=q)
    else:
        case = "neither"
        sat["a"] = False
        sat["e"] = False
    return ConditionReport(m1, m2, n, p, q, K, case, sat, equation)


def _no_forbidden_residue(m1: int, m2: int, n: int, p: int, K: int, skip: int) -> bool:
    for s in primes_upto(K - 1):
        s = int(s)
        if s == skip or m1 % s == 0 or m2 % s == 0:
            continue
        if p % s == _f(n, m1, s):
            return False  # short-circuit on the first violated prime
    return True


def condition_matrix(m1: int, m2: int, n: int, P: np.ndarray, Q: np.ndarray,
                     K: int, inject_fault: str | None = None) -> np.ndarray:
    """Vectorized conditions_hold for every (p, q) in P x Q.

    Each condition is the same literal residue test check_conditions makes;
    numpy only batches it over P and Q.  inject_fault flips one named
    condition and exists so tests can prove the oracle detects violations.
    """
    if inject_fault is not None and inject_fault not in FAULT_KEYS:
        raise ConfigError(f"inject_fault must be one of {FAULT_KEYS}")
    nP, nQ = P.size, Q.size
    flip = lambda key, arr: ~arr if inject_fault == key else arr  # noqa: E731

    # shared s-scan for (d)/(h): count violated primes per p and their sum,
    # so "violations contained in {q}" is a vector comparison
    cnt = np.zeros(nP, np.int64)
    ssum = np.zeros(nP, np.int64)
    for s in primes_upto(K - 1):
        s = int(s)
        if m1 % s == 0 or m2 % s == 0:
            continue
        viol = P % s == _f(n, m1, s)
        cnt += viol
        ssum += viol * s
    clean = cnt == 0

    fac = factorize(m2)
    memb: dict[int, np.ndarray] = {}
    for r, a in fac:
        mod = r ** (a + 1)
        fv = _f(n, m1, mod)
        reps = np.array(sorted((fv + j * r ** a) % mod for j in range(1, r)), np.int64)
        memb[r] = np.isin(P % mod, reps)

    # group 1
    a_q = flip("a", (m2 % Q != 0) & (m1 % Q != 0))
    b_p = np.ones(nP, bool)
    for r, _ in fac:
        b_p &= memb[r]
    b_p = flip("b", b_p)
    c_mat = np.zeros((nP, nQ), bool)
    for j in range(nQ):
        qv = int(Q[j])
        if m1 % qv == 0:
            continue  # group 1 is already dead via (a)
        mod = qv * qv
        d = (P % mod - _f(n, m1, mod)) % mod
        c_mat[:, j] = (d != 0) & (d % qv == 0)
    c_mat = flip("c", c_mat)
    d_mat = flip("d", clean[:, None] | ((cnt == 1)[:, None] & (ssum[:, None] == Q[None, :])))
    out = a_q[None, :] & b_p[:, None] & c_mat & d_mat

    # group 2
    if m2 > 1:
        h_p = flip("h", clean)
        for r, a in fac:
            if m1 % r == 0 or m2 * r >= n:
                continue
            cols = np.flatnonzero(Q == r)
            if cols.size == 0:
                continue
            f_p = np.ones(nP, bool)
            for r2, _ in fac:
                if r2 != r:
                    f_p &= memb[r2]
            f_p = flip("f", f_p)
            mod = r ** (a + 2)
            fv = _f(n, m1, mod)
            reps = np.array(sorted((fv + j * r ** (a + 1)) % mod for j in range(1, r)), np.int64)
            g_p = flip("g", np.isin(P % mod, reps))
            out[:, cols[0]] |= f_p & g_p & h_p
    return out


def verify_equivalence(m1: int, m2: int, n_max: int, *, K_factor: int = 1,
                       inject_fault: str | None = None) -> EquivalenceReport:
    """Exhaustively compare the equation with the conditions on small instances.

    For every admissible n <= n_max, every prime p < n/m1 and prime q < n/m2,
    the partition equation must hold exactly when the selected condition
    group does.
    """
    pair = CoeffPair(m1, m2)
    if n_max < 1 or n_max > VERIFY_LIMIT:
        raise RangeError(f"n_max must be in 1..{VERIFY_LIMIT}")
    if K_factor < 1:
        raise ConfigError("K_factor must be at least 1")
    all_primes = primes_upto(n_max)
    checked = 0
    violations: list[tuple[int, int, int, bool, bool]] = []
    for n in range(1, n_max + 1):
        if not is_admissible(pair, n):
            continue
        P = all_primes[: np.searchsorted(all_primes, -(-n // m1))]
        Q = all_primes[: np.searchsorted(all_primes, -(-n // m2))]
        # p < n/m1 means m1*p < n; for n/m1 integral the bound is exclusive
        P = P[m1 * P < n]
        Q = Q[m2 * Q < n]
        if P.size == 0 or Q.size == 0:
            continue
        K = K_factor * default_K(n, m2)
        cond = condition_matrix(m1, m2, n, P, Q, K, inject_fault)
        eq = np.equal.outer(m1 * P, n - m2 * Q)
        checked += int(P.size) * int(Q.size)
        bad = np.argwhere(cond != eq)
        for i, j in bad:
            violations.append((n, int(P[i]), int(Q[j]), bool(eq[i, j]), bool(cond[i, j])))
    return EquivalenceReport(m1, m2, n_max, K_factor, checked, violations)
