"""Compare the numba and numpy kernel backends on identical work.

Usage: python benchmarks/compare_backends.py [--limit 1e7] [--pairs all:8]

Forces each backend in turn (ignoring GOLDPART_BACKEND), times the bitmap
fill and a sweep over the requested pairs, checks that both backends produce
identical summaries, and prints the speed ratio.
"""
import argparse
import os
import time

from goldpart import CoeffPair, PrimeStore, backend, sweep_all
from goldpart.cli import parse_int, parse_pairs


def run_backend(limit: int, pairs: list[CoeffPair]):
    t0 = time.perf_counter()
    store = PrimeStore(limit)
    t_fill = time.perf_counter() - t0
    t0 = time.perf_counter()
    summaries = sweep_all(pairs, limit, store, workers=1)
    t_sweep = time.perf_counter() - t0
    return t_fill, t_sweep, summaries


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--limit", default="1e7")
    ap.add_argument("--pairs", default="all:8")
    args = ap.parse_args()
    limit = parse_int(args.limit, "--limit")
    pairs = parse_pairs(args.pairs, include_1_1=True)

    results = {}
    for name in backend.available_backends():
        os.environ[backend.BACKEND_ENV] = name
        if name == "numba":
            # tiny warm-up run so JIT compilation stays out of the timings
            warm = PrimeStore(10 ** 4)
            sweep_all([CoeffPair(1, 1)], 10 ** 4, warm, workers=1)
        t_fill, t_sweep, summaries = run_backend(limit, pairs)
        results[name] = (t_fill, t_sweep, summaries)
        print(f"{name:>6}: bitmap fill {t_fill:8.3f}s   "
              f"sweep of {len(pairs)} pairs to {limit:.0e}: {t_sweep:8.3f}s")

    if len(results) == 2:
        a, b = results["numba"], results["numpy"]
        assert a[2] == b[2], "backends disagree on sweep summaries"
        print(f"agreement: identical summaries for all {len(pairs)} pairs")
        print(f"numpy/numba ratio: fill {b[0] / a[0]:.1f}x, sweep {b[1] / a[1]:.1f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
