#!/usr/bin/env python3
"""Comparison counts of the structured solver as the cube grows.

    python3 scripts/bench_scaling.py --ps 4 8 16 32 64 --csv bench.csv
"""
import argparse
import csv
import sys

from jumpfree.harness.runner import bench_rows, loglog_slope


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--ps", type=int, nargs="+", default=[4, 8, 16, 32])
    ap.add_argument("-k", type=int, default=2)
    ap.add_argument("-t", type=int, default=1)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--csv", default=None, help="write rows here as well")
    args = ap.parse_args()

    rows = bench_rows(args.ps, args.k, args.t, args.seed)
    print(f"{'p':>4} {'size':>6} {'comparisons':>12} {'bound':>10} {'ms':>9}")
    for r in rows:
        print(f"{r['p']:>4} {r['instanceSize']:>6} {r['comparisons']:>12} {r['bound']:>10} "
              f"{r['wallMillis']:>9.2f}")
    if len(rows) > 1:
        slope = loglog_slope([r["p"] for r in rows], [max(1, r["comparisons"]) for r in rows])
        print(f"log-log slope {slope:.3f} (k*t = {args.k * args.t})")
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            w = csv.DictWriter(fh, fieldnames=list(rows[0]))
            w.writeheader()
            w.writerows(rows)
    return 0 if all(r["comparisons"] <= r["bound"] for r in rows) else 1


if __name__ == "__main__":
    sys.exit(main())
