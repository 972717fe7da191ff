"""Batch command-line interface.

Subcommands: sweep, rank, predict, verify-prop, report.  Machine-readable
output goes to files under --out (or stdout for verify-prop); progress and
diagnostics go to stderr.  Exit codes: 0 success, 1 configuration or usage
error, 2 I/O failure, 3 mathematical verification failure.
"""
from __future__ import annotations

import argparse
import math
import os
import sys
import threading
from decimal import Decimal, InvalidOperation, ROUND_HALF_EVEN
from pathlib import Path

from .criteria import FAULT_KEYS, verify_equivalence
from .errors import (CheckpointError, ConfigError, GoldpartError, InputError)
from .partitions import CoeffPair
from .predictor import rank_predictor, search_cost
from .primes import DEFAULT_MEMORY_BUDGET, PrimeStore
from .ranking import TIE_POLICIES, rank_by, spearman_rho
from .sweep import sweep_all

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_IO = 2
EXIT_VERIFY = 3


def parse_pairs(text: str, include_1_1: bool = False) -> list[CoeffPair]:
    """Pair set syntax: 'all:B', a single 'm1,m2', or 'm1:m2,m1:m2,...'."""
    text = text.strip()
    if not text:
        raise ConfigError("empty --pairs")
    try:
        if text.startswith("all:"):
            bound = int(text[4:])
            if bound < 1:
                raise ConfigError(f"bad pair bound {bound}")
            pairs = [CoeffPair(a, b)
                     for a in range(1, bound + 1) for b in range(1, bound + 1)
                     if a != b and math.gcd(a, b) == 1]
            if include_1_1:
                pairs.insert(0, CoeffPair(1, 1))
            return pairs
        if ":" in text:
            pairs = []
            for tok in text.split(","):
                a, _, b = tok.partition(":")
                pairs.append(CoeffPair(int(a), int(b)))
            if len(set(pairs)) != len(pairs):
                raise ConfigError("duplicate pair in --pairs")
            return pairs
        parts = text.split(",")
        if len(parts) == 2:
            return [CoeffPair(int(parts[0]), int(parts[1]))]
    except ConfigError:
        raise
    except ValueError as exc:
        raise ConfigError(f"cannot parse --pairs {text!r}: {exc}") from exc
    raise ConfigError(f"cannot parse --pairs {text!r}")


def parse_int(text: str, what: str) -> int:
    """Integer that may be written in scientific notation ('1e9')."""
    try:
        d = Decimal(text)
    except InvalidOperation as exc:
        raise ConfigError(f"bad {what}: {text!r}") from exc
    if d != d.to_integral_value() or d < 1:
        raise ConfigError(f"{what} must be a positive integer, got {text!r}")
    return int(d)


def _open_out(outdir: Path, name: str):
    return open(outdir / name, "w", encoding="utf-8", newline="")


def _write_csv(outdir: Path, name: str, header: list[str], rows) -> None:
    import csv

    with _open_out(outdir, name) as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)


def _read_sweep_csv(path: str) -> dict[CoeffPair, dict]:
    import csv

    out: dict[CoeffPair, dict] = {}
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.DictReader(fh)
        need = {"m1", "m2", "L", "k_hat", "count_n", "avg_pmin", "max_pmin",
                "max_pmin_at", "counterexample_count"}
        if reader.fieldnames is None or not need.issubset(reader.fieldnames):
            raise InputError(f"{path} is not a sweep CSV (missing columns)")
        for row in reader:
            pair = CoeffPair(int(row["m1"]), int(row["m2"]))
            if pair in out:
                raise InputError(f"duplicate pair {pair.token} in {path}")
            out[pair] = {
                "count": int(row["count_n"]),
                "avg": Decimal(row["avg_pmin"]) if row["avg_pmin"] else None,
                "max": int(row["max_pmin"]),
                "max_at": int(row["max_pmin_at"]),
            }
    if not out:
        raise InputError(f"no rows in {path}")
    return out


def _progress_printer():
    lock = threading.Lock()
    last: dict[CoeffPair, int] = {}

    def prog(pair: CoeffPair, done: int, total: int) -> None:
        pct = 100 * done // total
        with lock:
            if pct >= last.get(pair, -10) + 10 or done == total:
                last[pair] = pct
                print(f"[sweep] {pair.token} {pct}% (n={done}/{total})",
                      file=sys.stderr, flush=True)

    return prog


def cmd_sweep(args) -> int:
    pairs = parse_pairs(args.pairs, args.include_1_1)
    limit = parse_int(args.limit, "--limit")
    outdir = Path(args.out)
    outdir.mkdir(parents=True, exist_ok=True)
    store = PrimeStore(max(limit, 2), memory_budget=args.memory_budget)
    if args.checkpoint_dir:
        Path(args.checkpoint_dir).mkdir(parents=True, exist_ok=True)
    summaries = sweep_all(pairs, limit, store, workers=args.workers,
                          include_qstats=args.include_qstats,
                          checkpoint_dir=args.checkpoint_dir,
                          resume_existing=args.resume,
                          progress=_progress_printer())
    summaries.sort(key=lambda s: (s.pair.m1, s.pair.m2))
    header = ["m1", "m2", "L", "k_hat", "count_n", "avg_pmin", "max_pmin",
              "max_pmin_at", "counterexample_count"]
    if args.include_qstats:
        header += ["avg_qmax", "max_qmax", "max_qmax_at"]
    rows = []
    for s in summaries:
        row = [s.pair.m1, s.pair.m2, s.threshold, s.k_hat, s.count_n,
               s.average_decimal(args.precision), s.max_pmin, s.max_pmin_at,
               len(s.counterexamples)]
        if args.include_qstats:
            from .sweep import format_average

            row += [format_average(s.sum_qmax, s.count_n, args.precision),
                    s.max_qmax, s.max_qmax_at]
        rows.append(row)
    _write_csv(outdir, "sweep.csv", header, rows)
    _write_csv(outdir, "counterexamples.csv", ["pair", "n"],
               [[s.pair.token, n] for s in summaries for n in s.counterexamples])
    return EXIT_OK


def _rank_artifacts(data: dict[CoeffPair, dict], tie_policy: str):
    pairs = sorted(data, key=lambda p: (p.m1, p.m2))
    for p in pairs:
        if data[p]["avg"] is None:
            raise InputError(f"pair {p.token} has an empty window; cannot rank")
    from fractions import Fraction

    avg_items = [(p, Fraction(data[p]["avg"])) for p in pairs]
    max_items = [(p, data[p]["max"]) for p in pairs]
    r_items = [(p, rank_predictor(p)) for p in pairs]
    t_avg = rank_by(avg_items, "avg_pmin", tie_policy)
    t_max = rank_by(max_items, "max_pmin", tie_policy)
    t_r = rank_by(r_items, "rank_predictor", tie_policy)
    return pairs, t_avg, t_max, t_r, dict(r_items)


def cmd_rank(args) -> int:
    data = _read_sweep_csv(args.sweep_csv)
    outdir = Path(args.out)
    outdir.mkdir(parents=True, exist_ok=True)
    pairs, t_avg, t_max, t_r, r_vals = _rank_artifacts(data, args.tie_policy)
    rows = [[p.token, f"{t_avg.rank_of(p):.1f}", f"{t_max.rank_of(p):.1f}",
             f"{t_r.rank_of(p):.1f}", f"{float(r_vals[p]):.12g}"] for p in pairs]
    _write_csv(outdir, "rankings.csv", ["pair", "avg_rank", "max_rank", "R_rank", "R_value"], rows)
    corr = []
    for policy in TIE_POLICIES:
        _, a, m, r, _ = _rank_artifacts(data, policy)
        corr.append([policy, "R", "avg_pmin", f"{spearman_rho(r, a):.6f}"])
        corr.append([policy, "R", "max_pmin", f"{spearman_rho(r, m):.6f}"])
        corr.append([policy, "max_pmin", "avg_pmin", f"{spearman_rho(m, a):.6f}"])
    _write_csv(outdir, "correlations.csv", ["tie_policy", "statistic_a", "statistic_b", "rho"], corr)
    _write_csv(outdir, "fig_rank_R_vs_rank_avg.csv", ["avg_rank", "R_rank"],
               [[f"{t_avg.rank_of(p):.1f}", f"{t_r.rank_of(p):.1f}"] for p in pairs])
    _write_csv(outdir, "fig_rank_R_vs_rank_max.csv", ["max_rank", "R_rank"],
               [[f"{t_max.rank_of(p):.1f}", f"{t_r.rank_of(p):.1f}"] for p in pairs])
    _write_csv(outdir, "fig_rank_max_vs_rank_avg.csv", ["avg_rank", "max_rank"],
               [[f"{t_avg.rank_of(p):.1f}", f"{t_max.rank_of(p):.1f}"] for p in pairs])
    _write_csv(outdir, "fig_R_vs_avg.csv", ["avg_pmin", "R_value"],
               [[str(data[p]["avg"]), f"{float(r_vals[p]):.12g}"] for p in pairs])
    return EXIT_OK


def cmd_predict(args) -> int:
    pairs = parse_pairs(args.pairs, args.include_1_1)
    outdir = Path(args.out)
    outdir.mkdir(parents=True, exist_ok=True)
    data = None
    if args.sweep_csv:
        data = _read_sweep_csv(args.sweep_csv)
        for p in pairs:
            if p not in data or data[p]["avg"] is None:
                raise ConfigError(f"search-cost output needs sweep averages for {p.token}")
    header = ["pair", "R_fraction", "R_decimal"] + (["g"] if data else [])
    rows = []
    for p in sorted(pairs, key=lambda p: (p.m1, p.m2)):
        r = rank_predictor(p)
        row = [p.token, f"{r.numerator}/{r.denominator}", f"{float(r):.12g}"]
        if data:
            row.append(f"{search_cost(p, float(data[p]['avg'])):.6f}")
        rows.append(row)
    _write_csv(outdir, "predictor.csv", header, rows)
    if data:
        rows = []
        seen = set()
        for p in pairs:
            a, b = sorted((p.m1, p.m2))
            if (a, b) in seen or a == b:
                continue
            fwd, rev = CoeffPair(a, b), CoeffPair(b, a)
            if fwd in data and rev in data:
                seen.add((a, b))
                g_fwd = search_cost(fwd, float(data[fwd]["avg"]))
                g_rev = search_cost(rev, float(data[rev]["avg"]))
                faster = fwd.token if g_fwd < g_rev else rev.token
                rows.append([a, b, f"{g_fwd:.6f}", f"{g_rev:.6f}", faster])
        _write_csv(outdir, "search_cost.csv",
                   ["m1", "m2", "g_m1_m2", "g_m2_m1", "predicted_faster"], rows)
    return EXIT_OK


def cmd_verify_prop(args) -> int:
    if args.pairs is None:
        pairs = parse_pairs("all:10", include_1_1=True)
    else:
        pairs = parse_pairs(args.pairs, args.include_1_1)
    n_max = parse_int(args.n_max, "--n-max")
    total_viol = 0
    print("pair,n_max,tuples_checked,violations")
    for p in sorted(pairs, key=lambda p: (p.m1, p.m2)):
        rep = verify_equivalence(p.m1, p.m2, n_max, K_factor=args.k_factor,
                                 inject_fault=args.inject_fault)
        total_viol += len(rep.violations)
        print(f"{p.token},{n_max},{rep.tuples_checked},{len(rep.violations)}")
        for n, pp, qq, eq, cond in rep.violations[:20]:
            print(f"[verify-prop] violation {p.token} n={n} p={pp} q={qq} "
                  f"equation={eq} conditions={cond}", file=sys.stderr)
        sys.stdout.flush()
    return EXIT_VERIFY if total_viol else EXIT_OK


def cmd_report(args) -> int:
    rc = cmd_rank(args)
    if rc != EXIT_OK:
        return rc
    data = _read_sweep_csv(args.sweep_csv)
    outdir = Path(args.out)
    args_pairs = sorted(data, key=lambda p: (p.m1, p.m2))
    args = argparse.Namespace(pairs=",".join(p.token for p in args_pairs),
                              include_1_1=False, out=args.out,
                              sweep_csv=args.sweep_csv)
    rc = cmd_predict(args)
    if rc != EXIT_OK:
        return rc
    q3 = Decimal("0.001")
    rows = []
    for p in args_pairs:
        if p.m1 < p.m2 and p.swapped() in data:
            fwd, rev = data[p], data[p.swapped()]
            if fwd["avg"] is None or rev["avg"] is None:
                continue
            rows.append([p.m1, p.m2,
                         str(fwd["avg"].quantize(q3, ROUND_HALF_EVEN)), fwd["max"],
                         str(rev["avg"].quantize(q3, ROUND_HALF_EVEN)), rev["max"]])
    _write_csv(outdir, "table_avg_max.csv",
               ["m1", "m2", "avg_pstar", "max_pstar", "avg_qstar", "max_qstar"], rows)
    return EXIT_OK


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # usage problems exit 1, not argparse's default 2
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_CONFIG)


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="goldpart",
                 description="Minimal-prime statistics of two-prime partitions")
    sub = ap.add_subparsers(dest="command", required=True)

    def add_common(p, pairs_required=True):
        p.add_argument("--pairs", required=pairs_required, default=None,
                       help="'all:B', 'm1,m2', or comma list of m1:m2 tokens")
        p.add_argument("--include-1-1", action="store_true",
                       help="let 'all:B' include the classical pair (1,1)")

    sw = sub.add_parser("sweep", parents=[], help="scan pairs up to a threshold")
    add_common(sw)
    sw.add_argument("--limit", required=True, help="threshold L (accepts 1e9 style)")
    sw.add_argument("--out", required=True, help="output directory")
    sw.add_argument("--workers", type=int, default=max(1, os.cpu_count() or 1))
    sw.add_argument("--memory-budget", type=int, default=DEFAULT_MEMORY_BUDGET,
                    help="bytes allowed for the primality bitmap")
    sw.add_argument("--checkpoint-dir", default=None)
    sw.add_argument("--resume", action="store_true",
                    help="resume from checkpoints in --checkpoint-dir")
    sw.add_argument("--precision", type=int, default=5,
                    help="decimal places for averages")
    sw.add_argument("--include-qstats", action="store_true",
                    help="also report the q side of each minimal partition")
    sw.set_defaults(func=cmd_sweep)

    rk = sub.add_parser("rank", help="rankings, correlations and plot data from a sweep CSV")
    rk.add_argument("--sweep-csv", required=True)
    rk.add_argument("--out", required=True)
    rk.add_argument("--tie-policy", choices=TIE_POLICIES, default="fractional")
    rk.set_defaults(func=cmd_rank)

    pd = sub.add_parser("predict", help="closed-form predictor values per pair")
    add_common(pd)
    pd.add_argument("--out", required=True)
    pd.add_argument("--sweep-csv", default=None,
                    help="sweep CSV supplying averages for search-cost output")
    pd.set_defaults(func=cmd_predict)

    vp = sub.add_parser("verify-prop",
                        help="exhaustively check the residue criteria on small instances")
    add_common(vp, pairs_required=False)
    vp.add_argument("--n-max", default="2000")
    vp.add_argument("--k-factor", type=int, default=1,
                    help="multiply the default prime-scan bound K")
    vp.add_argument("--inject-fault", choices=FAULT_KEYS, default=None,
                    help=argparse.SUPPRESS)
    vp.set_defaults(func=cmd_verify_prop)

    rp = sub.add_parser("report", help="rank + predict + wide-format table in one step")
    rp.add_argument("--sweep-csv", required=True)
    rp.add_argument("--out", required=True)
    rp.add_argument("--tie-policy", choices=TIE_POLICIES, default="fractional")
    rp.set_defaults(func=cmd_report)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, InputError) as exc:
        print(f"goldpart: configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except CheckpointError as exc:
        print(f"goldpart: checkpoint error: {exc}", file=sys.stderr)
        return EXIT_IO
    except OSError as exc:
        print(f"goldpart: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except GoldpartError as exc:
        print(f"goldpart: error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
