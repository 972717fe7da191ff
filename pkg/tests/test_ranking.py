"""Tie-aware rankings and rank-order correlation."""
from fractions import Fraction

import pytest

from goldpart import CoeffPair, InputError, rank_by, spearman_rho


P21, P31, P41, P51 = (CoeffPair(2, 1), CoeffPair(3, 1),
                      CoeffPair(4, 1), CoeffPair(5, 1))


def test_fractional_ties():
    # exact tie: no odd prime divides 2 or 4, both values are 1
    items = [(P21, Fraction(1)), (P41, Fraction(1)), (P31, Fraction(1, 2))]
    t = rank_by(items, "R", "fractional")
    assert t.rank_of(P31) == 1.0
    assert t.rank_of(P21) == 2.5
    assert t.rank_of(P41) == 2.5


def test_ordinal_ties():
    items = [(P21, Fraction(1)), (P41, Fraction(1)), (P31, Fraction(1, 2))]
    t = rank_by(items, "R", "ordinal")
    assert t.rank_of(P31) == 1.0
    assert t.rank_of(P21) == 2.0
    assert t.rank_of(P41) == 2.0


def test_rank_without_ties():
    items = [(P21, 30), (P31, 10), (P41, 20), (P51, 40)]
    for policy in ("fractional", "ordinal"):
        t = rank_by(items, tie_policy=policy)
        assert [t.rank_of(p) for p in (P31, P41, P21, P51)] == [1, 2, 3, 4]


def test_rank_validation():
    with pytest.raises(InputError):
        rank_by([(P21, 1)], tie_policy="splendid")
    with pytest.raises(InputError):
        rank_by([(P21, 1), (P21, 2)])
    t = rank_by([(P21, 1), (P31, 2)])
    with pytest.raises(InputError):
        t.rank_of(P51)


def test_spearman_perfect_and_reversed():
    items = [(P21, 1), (P31, 2), (P41, 3), (P51, 4)]
    up = rank_by(items)
    down = rank_by([(p, -v) for p, v in items])
    assert spearman_rho(up, up) == pytest.approx(1.0)
    assert spearman_rho(up, down) == pytest.approx(-1.0)


def test_spearman_known_value():
    # ranks (1,2,3,4) vs (2,1,4,3): sum of squared differences is 4,
    # so rho = 1 - 6*4/(4*15) = 0.6
    a = rank_by([(P21, 1), (P31, 2), (P41, 3), (P51, 4)])
    b = rank_by([(P21, 2), (P31, 1), (P41, 4), (P51, 3)])
    assert spearman_rho(a, b) == pytest.approx(0.6)


def test_spearman_with_ties_uses_pearson_on_ranks():
    # values (1, 1, 2) vs (3, 5, 9): fractional ranks (1.5, 1.5, 3) and
    # (1, 2, 3); Pearson of those rank vectors is sqrt(3)/2
    a = rank_by([(P21, 1), (P31, 1), (P41, 2)], tie_policy="fractional")
    b = rank_by([(P21, 3), (P31, 5), (P41, 9)])
    assert spearman_rho(a, b) == pytest.approx(3 ** 0.5 / 2)


def test_spearman_validation():
    a = rank_by([(P21, 1), (P31, 2)])
    b = rank_by([(P21, 1), (P51, 2)])
    with pytest.raises(InputError):
        spearman_rho(a, b)
    with pytest.raises(InputError):
        spearman_rho(rank_by([(P21, 1)]), rank_by([(P21, 1)]))
    c = rank_by([(P21, 7), (P31, 7)], tie_policy="fractional")
    d = rank_by([(P21, 1), (P31, 2)])
    with pytest.raises(InputError):
        spearman_rho(c, d)
