"""Acceptance gate: one criterion per test, one verdict line per criterion.

Run with `pytest -s tests/test_acceptance.py` to see every verdict line even
for passing criteria.  Criteria 5 and 6 reproduce the reference 10^9 tables
and are enabled with GOLDPART_SLOW=1 (hours); criteria 7 and 8 run at 10^7
and are enabled with GOLDPART_MEDIUM=1 (minutes).  Everything else is on by
default.
"""
import math
from fractions import Fraction

import pytest

from goldpart import (CoeffPair, PrimeStore, estimate_partition_count,
                      factorize, find_p_minimal, find_p_minimal_bruteforce,
                      find_q_maximal_descending, is_admissible, rank_by,
                      rank_predictor, spearman_rho, sweep_all, sweep_pair,
                      verify_equivalence)
from goldpart.cli import main
from conftest import MEDIUM, SLOW, coprime_pairs, oracle_partitions

VERDICTS = []


def verdict(num, name, ok, detail, capsys):
    line = f"ACCEPTANCE {num:02d} {name}: {'PASS' if ok else 'FAIL'} ({detail})"
    VERDICTS.append(line)
    with capsys.disabled():
        print("\n" + line, flush=True)
    assert ok, line


def gate(num, name, enabled, flag, capsys):
    if not enabled:
        line = f"ACCEPTANCE {num:02d} {name}: SKIPPED (set {flag}=1 to run)"
        VERDICTS.append(line)
        with capsys.disabled():
            print("\n" + line, flush=True)
        pytest.skip(line)


def test_criterion_01_three_way_search_agreement(store, capsys):
    pairs = coprime_pairs(12, include_1_1=True)
    checked = 0
    bad = []
    for pair in pairs:
        for n in range(1, 10 ** 4 + 1):
            if not is_admissible(pair, n):
                continue
            checked += 1
            a = find_p_minimal(pair, n, store)
            b = find_p_minimal_bruteforce(pair, n, store)
            c = find_q_maximal_descending(pair, n, store)
            if not ((a.p_min, a.q_at_pmin) == (b.p_min, b.q_at_pmin)
                    == (c.p_min, c.q_at_pmin)):
                bad.append((pair.token, n))
    verdict(1, "three-way search agreement", not bad,
            f"{len(pairs)} pairs, {checked} admissible n <= 1e4, "
            f"{len(bad)} discrepancies", capsys)


def min_q_scan(m1, m2, n, store):
    """Smallest q with n = m1*p + m2*q, scanning q upward over all primes."""
    q = 2
    while m2 * q <= n - 2 * m1:
        if store.is_prime(q):
            rem = n - m2 * q
            if rem % m1 == 0 and store.is_prime(rem // m1):
                return q
        q += 1 if q == 2 else 2
    return None


def test_criterion_02_swapped_pair_symmetry(store, capsys):
    pairs = [CoeffPair(1, 2), CoeffPair(2, 1), CoeffPair(3, 5),
             CoeffPair(5, 3), CoeffPair(4, 9), CoeffPair(9, 4)]
    checked = 0
    bad = []
    for pair in pairs:
        sw = pair.swapped()
        for n in range(1, 10 ** 5 + 1):
            adm = is_admissible(pair, n)
            if adm != is_admissible(sw, n):
                bad.append(("admissibility", pair.token, n))
                continue
            if not adm:
                continue
            checked += 1
            mine = find_p_minimal(pair, n, store).p_min
            theirs = min_q_scan(sw.m1, sw.m2, n, store)
            if mine != theirs:
                bad.append((pair.token, n, mine, theirs))
    verdict(2, "swapped-pair symmetry", not bad,
            f"6 pairs, {checked} admissible n <= 1e5, {len(bad)} discrepancies",
            capsys)


def test_criterion_03_residue_criteria_equivalence(capsys):
    pairs = coprime_pairs(10, include_1_1=True)
    tuples = 0
    viol = 0
    for pair in pairs:
        for factor in (1, 2):
            rep = verify_equivalence(pair.m1, pair.m2, 2000, K_factor=factor)
            tuples += rep.tuples_checked
            viol += len(rep.violations)
    verdict(3, "residue criteria equivalence", viol == 0,
            f"{len(pairs)} pairs, n <= 2000, K and 2K, "
            f"{tuples} tuples, {viol} violations", capsys)


def test_criterion_04_predictor_exact_laws(capsys):
    pairs = coprime_pairs(40, include_1_1=True)
    ratio_ok = all(rank_predictor(p) * p.m1 == rank_predictor(p.swapped()) * p.m2
                   for p in pairs)

    def odd_rad(x):
        return math.prod(f for f, _ in factorize(x) if f > 2)

    groups = {}
    for p in pairs:
        groups.setdefault((odd_rad(p.m1), p.m2), set()).add(rank_predictor(p))
    radical_ok = all(len(v) == 1 for v in groups.values())
    spots_ok = (rank_predictor(CoeffPair(1, 1)) == 1
                and rank_predictor(CoeffPair(2, 3)) == Fraction(3, 2)
                and rank_predictor(CoeffPair(12, 35)) == Fraction(175, 16))
    verdict(4, "predictor exact laws", ratio_ok and radical_ok and spots_ok,
            f"{len(pairs)} pairs: ratio law {ratio_ok}, radical invariance "
            f"{radical_ok}, spot values {spots_ok}", capsys)


def test_criterion_05_billion_threshold_tables(capsys):
    gate(5, "1e9 table reproduction", SLOW, "GOLDPART_SLOW", capsys)
    store = PrimeStore(10 ** 9)
    s12 = sweep_pair(CoeffPair(1, 2), 10 ** 9, store)
    s21 = sweep_pair(CoeffPair(2, 1), 10 ** 9, store)
    s819 = sweep_pair(CoeffPair(8, 19), 10 ** 9, store)
    ok = (abs(s12.average() - 80.839) <= 0.001 and s12.max_pmin == 3037
          and abs(s21.average() - 32.80032) <= 0.00001 and s21.max_pmin == 1609
          and s819.max_pmin == 42727)
    verdict(5, "1e9 table reproduction", ok,
            f"(1,2) avg {s12.average_decimal(5)} max {s12.max_pmin}; "
            f"(2,1) avg {s21.average_decimal(5)} max {s21.max_pmin}; "
            f"(8,19) max {s819.max_pmin}", capsys)


def test_criterion_06_billion_threshold_correlations(capsys):
    gate(6, "1e9 correlation reproduction", SLOW, "GOLDPART_SLOW", capsys)
    pairs = coprime_pairs(40)
    store = PrimeStore(10 ** 9)
    summaries = sweep_all(pairs, 10 ** 9, store, workers=1)
    avg_items = [(s.pair, Fraction(s.sum_pmin, s.count_n)) for s in summaries]
    max_items = [(s.pair, s.max_pmin) for s in summaries]
    r_items = [(p, rank_predictor(p)) for p in pairs]
    rhos = {}
    for policy in ("fractional", "ordinal"):
        tr = rank_by(r_items, "R", policy)
        rhos[policy] = (
            spearman_rho(tr, rank_by(avg_items, "avg", policy)),
            spearman_rho(tr, rank_by(max_items, "max", policy)))
    got_avg, got_max = rhos["fractional"]
    ok = abs(got_avg - 0.9949) <= 0.0005 and abs(got_max - 0.9958) <= 0.0005
    verdict(6, "1e9 correlation reproduction", ok,
            f"489 coprime pairs both orders: fractional rho(R,avg)={got_avg:.4f} "
            f"rho(R,max)={got_max:.4f}; ordinal {rhos['ordinal'][0]:.4f}/"
            f"{rhos['ordinal'][1]:.4f}; want 0.9949/0.9958 +-0.0005", capsys)


@pytest.fixture(scope="module")
def medium_summaries():
    pairs = coprime_pairs(40)
    store = PrimeStore(10 ** 7)
    return sweep_all(pairs, 10 ** 7, store, workers=1)


def test_criterion_07_ten_million_correlation(capsys, request):
    gate(7, "1e7 correlation floor", MEDIUM, "GOLDPART_MEDIUM", capsys)
    summaries = request.getfixturevalue("medium_summaries")
    avg_items = [(s.pair, Fraction(s.sum_pmin, s.count_n)) for s in summaries]
    r_items = [(s.pair, rank_predictor(s.pair)) for s in summaries]
    tr = rank_by(r_items, "R", "fractional")
    rho = spearman_rho(tr, rank_by(avg_items, "avg", "fractional"))
    # frozen reference from the validated sweep of 2026-08-19
    frozen_ok = abs(rho - 0.995677) <= 0.0005
    by = {(s.pair.m1, s.pair.m2): s.average() for s in summaries}
    order_bad = [(a, b) for a in range(1, 13) for b in range(a + 1, 13)
                 if math.gcd(a, b) == 1 and not by[(b, a)] < by[(a, b)]]
    ok = rho >= 0.95 and frozen_ok and not order_bad
    verdict(7, "1e7 correlation floor", ok,
            f"rho(R,avg)={rho:.6f} (floor 0.95, frozen 0.995677+-0.0005), "
            f"order violations m1<m2<=12: {order_bad}", capsys)


def test_criterion_08_ten_million_radical_groups(capsys, request):
    gate(8, "1e7 same-radical spread", MEDIUM, "GOLDPART_MEDIUM", capsys)
    summaries = request.getfixturevalue("medium_summaries")

    def rad(x):
        return math.prod(f for f, _ in factorize(x)) if x > 1 else 1

    groups = {}
    for s in summaries:
        if s.pair.m1 <= 20 and s.pair.m2 <= 20:
            groups.setdefault((rad(s.pair.m1), s.pair.m2), []).append(s)
    worst = 0.0
    nontrivial = 0
    for ss in groups.values():
        if len(ss) < 2:
            continue
        nontrivial += 1
        avgs = [x.average() for x in ss]
        for a in avgs:
            for b in avgs:
                worst = max(worst, abs(a - b) / a)
    ok = worst <= 0.02 and nontrivial == 39
    verdict(8, "1e7 same-radical spread", ok,
            f"{nontrivial} groups with >=2 members, worst relative "
            f"spread {worst:.5f} (cap 0.02)", capsys)


def test_criterion_09_cli_determinism(tmp_path, capsys):
    a, b = tmp_path / "w1", tmp_path / "w8"
    argv = ["sweep", "--pairs", "all:5", "--include-1-1", "--limit", "1e6",
            "--include-qstats"]
    rc1 = main(argv + ["--out", str(a), "--workers", "1"])
    rc8 = main(argv + ["--out", str(b), "--workers", "8"])
    same = all((a / f).read_bytes() == (b / f).read_bytes()
               for f in ("sweep.csv", "counterexamples.csv"))
    verdict(9, "CLI worker determinism", rc1 == rc8 == 0 and same,
            "L=1e6, workers 1 vs 8, sweep.csv and counterexamples.csv "
            f"byte-identical: {same}", capsys)


def test_criterion_10_count_estimate_sanity(capsys):
    details = []
    ok = True
    for n in (10 ** 3, 10 ** 4):
        actual = sum(1 for p, q in oracle_partitions(1, 1, n) if p <= q)
        est = estimate_partition_count(CoeffPair(1, 1), n)
        ratio = est / actual
        ok = ok and 0.5 <= ratio <= 2.0
        details.append(f"n={n}: actual {actual}, estimate {est:.1f}, "
                       f"ratio {ratio:.3f}")
    verdict(10, "count estimate within factor 2", ok,
            "; ".join(details), capsys)
