"""Ascending rankings of pairs by a statistic, and Spearman correlation.

Ranks are fractional by default: tied values share the average of the ranks
they span (the "ordinal" policy instead gives every member of a tie the
smallest rank of the span, competition style).  Spearman's rho is computed as
the Pearson correlation of the two rank vectors, which is what the fractional
tie handling requires; the popular 6*sum(d^2) shortcut is only valid without
ties and is deliberately not used.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

import numpy as np

from .errors import InputError
from .partitions import CoeffPair

Value = Union[int, float, Fraction]
TIE_POLICIES = ("fractional", "ordinal")


@dataclass(frozen=True)
class RankEntry:
    pair: CoeffPair
    value: Value
    rank: float


@dataclass(frozen=True)
class RankTable:
    statistic: str
    entries: tuple[RankEntry, ...]  # ascending by value, ties by (m1, m2)

    def rank_of(self, pair: CoeffPair) -> float:
        for e in self.entries:
            if e.pair == pair:
                return e.rank
        raise InputError(f"pair {pair.token} not in table {self.statistic!r}")

    @property
    def pairs(self) -> frozenset:
        return frozenset(e.pair for e in self.entries)


def rank_by(items: Iterable[tuple[CoeffPair, Value]], statistic: str = "",
            tie_policy: str = "fractional") -> RankTable:
    """Rank pairs ascending by value; see module docstring for tie handling."""
    if tie_policy not in TIE_POLICIES:
        raise InputError(f"tie_policy must be one of {TIE_POLICIES}, got {tie_policy!r}")
    rows = list(items)
    if len({p for p, _ in rows}) != len(rows):
        raise InputError("duplicate pair in ranking input")
    rows.sort(key=lambda t: (t[1], t[0].m1, t[0].m2))
    entries: list[RankEntry] = []
    i = 0
    while i < len(rows):
        j = i
        while j + 1 < len(rows) and rows[j + 1][1] == rows[i][1]:
            j += 1
        rank = (i + 1) if tie_policy == "ordinal" else (i + 1 + j + 1) / 2
        for k in range(i, j + 1):
            entries.append(RankEntry(rows[k][0], rows[k][1], float(rank)))
        i = j + 1
    return RankTable(statistic, tuple(entries))


def spearman_rho(a: RankTable, b: RankTable) -> float:
    """Pearson correlation of the two rank vectors, matched by pair."""
    if a.pairs != b.pairs:
        raise InputError("rank tables cover different pair sets")
    if len(a.entries) < 2:
        raise InputError("need at least two entries for a correlation")
    order = sorted(a.pairs, key=lambda p: (p.m1, p.m2))
    ra = {e.pair: e.rank for e in a.entries}
    rb = {e.pair: e.rank for e in b.entries}
    x = np.array([ra[p] for p in order])
    y = np.array([rb[p] for p in order])
    if np.ptp(x) == 0 or np.ptp(y) == 0:
        raise InputError("rank vector is constant; correlation undefined")
    xc = x - x.mean()
    yc = y - y.mean()
    return float(np.inner(xc, yc) / np.sqrt(np.inner(xc, xc) * np.inner(yc, yc)))
