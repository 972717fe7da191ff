"""Threshold sweeps: minimal-prime statistics over all admissible n <= L.

Statistics are taken over the window (k_hat, L] where k_hat is the largest
admissible n <= L with no partition.  Segments form a monoid under
merge_partials: a right segment containing a counterexample resets the
window, so partial results can be combined associatively and a checkpointed
run finishes with exactly the summary an uninterrupted run produces.
"""
from __future__ import annotations

import hashlib
import json
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from decimal import ROUND_HALF_EVEN, Decimal, localcontext
from pathlib import Path
from typing import Callable, Sequence

import numpy as np

from . import backend
from .errors import CheckpointError, ConfigError, InputError
from .partitions import CoeffPair, find_p_minimal, search_tables
from .primes import PrimeStore

DEFAULT_SEGMENT_SPAN = 1 << 21  # integers per segment (~2^20 same-parity candidates)
_CX_BUF_LEN = 1 << 16
CHECKPOINT_VERSION = 1

ProgressFn = Callable[[CoeffPair, int, int], None]


def format_average(sum_pmin: int, count: int, places: int = 5) -> str:
    """Exact decimal string of sum/count, half-even at `places` digits."""
    if count == 0:
        return ""
    with localcontext() as ctx:
        ctx.prec = 60
        d = Decimal(sum_pmin) / Decimal(count)
    return str(d.quantize(Decimal(1).scaleb(-places), rounding=ROUND_HALF_EVEN))


@dataclass(frozen=True)
class RangePartial:
    """Sweep result for n in [lo, hi); stats cover the suffix after the last cx."""
    lo: int
    hi: int
    cx: tuple[int, ...]
    count: int
    sum_p: int
    max_p: int
    max_at: int
    sum_q: int
    max_q: int
    max_q_at: int


def empty_partial(at: int) -> RangePartial:
    return RangePartial(at, at, (), 0, 0, 0, 0, 0, 0, 0)


def merge_partials(a: RangePartial, b: RangePartial) -> RangePartial:
    """Combine adjacent partials (b starts where a ends)."""
    if a.hi != b.lo:
        raise InputError(f"partials are not adjacent: [{a.lo},{a.hi}) + [{b.lo},{b.hi})")
    if b.cx:
        stats = (b.count, b.sum_p, b.max_p, b.max_at, b.sum_q, b.max_q, b.max_q_at)
    else:
        if b.max_p > a.max_p:
            max_p, max_at = b.max_p, b.max_at
        else:
            max_p, max_at = a.max_p, a.max_at
        if b.max_q > a.max_q:
            max_q, max_q_at = b.max_q, b.max_q_at
        else:
            max_q, max_q_at = a.max_q, a.max_q_at
        stats = (a.count + b.count, a.sum_p + b.sum_p, max_p, max_at,
                 a.sum_q + b.sum_q, max_q, max_q_at)
    return RangePartial(a.lo, b.hi, a.cx + b.cx, *stats)


@dataclass(frozen=True)
class PairSummary:
    pair: CoeffPair
    threshold: int
    k_hat: int
    counterexamples: tuple[int, ...]
    count_n: int
    sum_pmin: int
    max_pmin: int
    max_pmin_at: int
    sum_qmax: int | None = None
    max_qmax: int | None = None
    max_qmax_at: int | None = None

    def average(self) -> float:
        if self.count_n == 0:
            raise ConfigError("no admissible n in the window; average undefined")
        return self.sum_pmin / self.count_n

    def average_decimal(self, places: int = 5) -> str:
        return format_average(self.sum_pmin, self.count_n, places)

    def average_qmax(self) -> float:
        if self.sum_qmax is None or self.count_n == 0:
            raise ConfigError("q statistics not collected or window empty")
        return self.sum_qmax / self.count_n


def _sweep_range_python(pair: CoeffPair, lo: int, hi: int, store: PrimeStore) -> RangePartial:
    """Plain-python span scan; used for deterministic-test stores and as a fallback."""
    _, _, _, rad, parity = search_tables(pair.m1, pair.m2)
    n = lo + ((parity - lo) % 2)
    cx: list[int] = []
    count = sum_p = max_p = max_at = sum_q = max_q = max_q_at = 0
    while n < hi:
        if all(n % int(rp) for rp in rad):
            out = find_p_minimal(pair, n, store)
            if not out.found:
                cx.append(n)
                count = sum_p = max_p = max_at = sum_q = max_q = max_q_at = 0
            else:
                count += 1
                sum_p += out.p_min
                if out.p_min > max_p:
                    max_p, max_at = out.p_min, n
                sum_q += out.q_at_pmin
                if out.q_at_pmin > max_q:
                    max_q, max_q_at = out.q_at_pmin, n
        n += 2
    return RangePartial(lo, hi, tuple(cx), count, sum_p, max_p, max_at,
                        sum_q, max_q, max_q_at)


def sweep_range(pair: CoeffPair, lo: int, hi: int, store: PrimeStore,
                _buf: np.ndarray | None = None) -> RangePartial:
    """One contiguous span [lo, hi) through the active kernel backend."""
    if lo < 1 or hi < lo:
        raise ConfigError(f"bad span [{lo}, {hi})")
    if store.words is None:
        return _sweep_range_python(pair, lo, hi, store)
    if hi - 1 > store.limit:
        raise ConfigError(f"span end {hi - 1} exceeds store limit {store.limit}")
    p0, two, step, rad, parity = search_tables(pair.m1, pair.m2)
    buf = _buf if _buf is not None else np.empty(_CX_BUF_LEN, np.int64)
    res = backend.kernels().sweep_span(lo, hi, parity, pair.m1, pair.m2,
                                       rad, p0, two, step, store.words, buf)
    ncx = int(res[0])
    if ncx > buf.shape[0]:
        # counterexample buffer overflow: redo the span without a cap
        return _sweep_range_python(pair, lo, hi, store)
    return RangePartial(lo, hi, tuple(int(v) for v in buf[:ncx]),
                        *(int(x) for x in res[1:]))


@dataclass(frozen=True)
class Checkpoint:
    pair: CoeffPair
    threshold: int
    last_completed_n: int
    cx: tuple[int, ...]
    count: int
    sum_p: int
    max_p: int
    max_at: int
    sum_q: int
    max_q: int
    max_q_at: int

    def _payload(self) -> dict:
        return {
            "format": "goldpart-checkpoint",
            "version": CHECKPOINT_VERSION,
            "m1": self.pair.m1,
            "m2": self.pair.m2,
            "threshold": self.threshold,
            "last_completed_n": self.last_completed_n,
            "counterexamples": list(self.cx),
            "count_n": self.count,
            "sum_pmin": str(self.sum_p),
            "max_pmin": self.max_p,
            "max_pmin_at": self.max_at,
            "sum_qmax": str(self.sum_q),
            "max_qmax": self.max_q,
            "max_qmax_at": self.max_q_at,
        }

    def write(self, path: str | Path) -> None:
        payload = self._payload()
        blob = json.dumps(payload, sort_keys=True, separators=(",", ":"))
        digest = hashlib.sha256(blob.encode()).hexdigest()
        doc = json.dumps({"payload": payload, "checksum": digest}, sort_keys=True)
        tmp = str(path) + ".tmp"
        with open(tmp, "w", encoding="utf-8") as fh:
            fh.write(doc)
        os.replace(tmp, path)

    @classmethod
    def load(cls, path: str | Path) -> "Checkpoint":
        try:
            with open(path, encoding="utf-8") as fh:
                doc = json.load(fh)
            payload = doc["payload"]
            blob = json.dumps(payload, sort_keys=True, separators=(",", ":"))
            if hashlib.sha256(blob.encode()).hexdigest() != doc["checksum"]:
                raise CheckpointError(f"checksum mismatch in {path}")
            if payload["format"] != "goldpart-checkpoint":
                raise CheckpointError(f"{path} is not a checkpoint file")
            if payload["version"] != CHECKPOINT_VERSION:
                raise CheckpointError(f"unsupported checkpoint version {payload['version']}")
            return cls(
                pair=CoeffPair(int(payload["m1"]), int(payload["m2"])),
                threshold=int(payload["threshold"]),
                last_completed_n=int(payload["last_completed_n"]),
                cx=tuple(int(v) for v in payload["counterexamples"]),
                count=int(payload["count_n"]),
                sum_p=int(payload["sum_pmin"]),
                max_p=int(payload["max_pmin"]),
                max_at=int(payload["max_pmin_at"]),
                sum_q=int(payload["sum_qmax"]),
                max_q=int(payload["max_qmax"]),
                max_q_at=int(payload["max_qmax_at"]),
            )
        except CheckpointError:
            raise
        except (OSError, ValueError, KeyError, TypeError) as exc:
            raise CheckpointError(f"cannot load checkpoint {path}: {exc}") from exc


def _state_to_checkpoint(pair: CoeffPair, threshold: int, state: RangePartial) -> Checkpoint:
    return Checkpoint(pair, threshold, state.hi - 1, state.cx, state.count,
                      state.sum_p, state.max_p, state.max_at,
                      state.sum_q, state.max_q, state.max_q_at)


def _checkpoint_to_state(ck: Checkpoint) -> RangePartial:
    return RangePartial(1, ck.last_completed_n + 1, ck.cx, ck.count,
                        ck.sum_p, ck.max_p, ck.max_at,
                        ck.sum_q, ck.max_q, ck.max_q_at)


def _summary(pair: CoeffPair, threshold: int, state: RangePartial,
             include_qstats: bool) -> PairSummary:
    k_hat = state.cx[-1] if state.cx else 0
    qs = (state.sum_q, state.max_q, state.max_q_at) if include_qstats else (None, None, None)
    return PairSummary(pair, threshold, k_hat, state.cx, state.count,
                       state.sum_p, state.max_p, state.max_at, *qs)


def sweep_pair(pair: CoeffPair, threshold: int, store: PrimeStore, *,
               include_qstats: bool = False,
               segment_span: int = DEFAULT_SEGMENT_SPAN,
               checkpoint_path: str | Path | None = None,
               resume_from: Checkpoint | None = None,
               progress: ProgressFn | None = None) -> PairSummary:
    """Scan all admissible n <= threshold and summarize minimal-prime stats."""
    if threshold < 1:
        raise ConfigError(f"threshold must be positive, got {threshold}")
    if store.words is not None and store.limit < threshold:
        raise ConfigError(f"store limit {store.limit} is below threshold {threshold}")
    if segment_span < 2:
        raise ConfigError("segment_span must be at least 2")
    if resume_from is not None:
        if resume_from.pair != pair:
            raise CheckpointError("checkpoint pair does not match the requested pair")
        state = _checkpoint_to_state(resume_from)
    else:
        state = empty_partial(1)
    buf = np.empty(_CX_BUF_LEN, np.int64) if store.words is not None else None
    lo = state.hi
    while lo <= threshold:
        hi = min(lo + segment_span, threshold + 1)
        state = merge_partials(state, sweep_range(pair, lo, hi, store, buf))
        if checkpoint_path is not None:
            _state_to_checkpoint(pair, threshold, state).write(checkpoint_path)
        if progress is not None:
            progress(pair, hi - 1, threshold)
        lo = hi
    return _summary(pair, threshold, state, include_qstats)


def resume(ck: Checkpoint, threshold: int, store: PrimeStore, *,
           include_qstats: bool = False, **kwargs) -> PairSummary:
    """Continue a checkpointed sweep up to threshold."""
    if ck.last_completed_n >= threshold:
        return _summary(ck.pair, threshold, _checkpoint_to_state(ck), include_qstats)
    return sweep_pair(ck.pair, threshold, store, include_qstats=include_qstats,
                      resume_from=ck, **kwargs)


def sweep_all(pairs: Sequence[CoeffPair], threshold: int, store: PrimeStore, *,
              workers: int = 1, include_qstats: bool = False,
              segment_span: int = DEFAULT_SEGMENT_SPAN,
              checkpoint_dir: str | Path | None = None,
              resume_existing: bool = False,
              progress: ProgressFn | None = None) -> list[PairSummary]:
    """Sweep every pair; results are in input order and worker-count independent."""
    if workers < 1:
        raise ConfigError(f"workers must be positive, got {workers}")
    if len(set(pairs)) != len(pairs):
        raise InputError("duplicate pairs in sweep request")

    def one(pair: CoeffPair) -> PairSummary:
        ck_path = None
        resume_from = None
        if checkpoint_dir is not None:
            ck_path = Path(checkpoint_dir) / f"sweep_{pair.m1}-{pair.m2}_L{threshold}.json"
            if resume_existing and ck_path.exists():
                ck = Checkpoint.load(ck_path)
                if ck.pair == pair and ck.last_completed_n >= threshold:
                    return _summary(pair, threshold, _checkpoint_to_state(ck), include_qstats)
                resume_from = ck
        return sweep_pair(pair, threshold, store, include_qstats=include_qstats,
                          segment_span=segment_span, checkpoint_path=ck_path,
                          resume_from=resume_from, progress=progress)

    if workers == 1 or len(pairs) <= 1:
        return [one(p) for p in pairs]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(one, pairs))
