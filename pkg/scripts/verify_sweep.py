#!/usr/bin/env python3
"""Run the property suites over several seeds and tabulate the outcome.

    python3 scripts/verify_sweep.py --seeds 1 2 3 --trials 200 --jobs 4
"""
import argparse
import json
import sys
import time

from jumpfree.harness.config import ALL_PROPERTIES
from jumpfree.harness.suites import run_suite


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--seeds", type=int, nargs="+", default=[0])
    ap.add_argument("--trials", type=int, default=100)
    ap.add_argument("--suites", nargs="+", default=ALL_PROPERTIES, choices=ALL_PROPERTIES)
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("--thin", type=float, default=0.0)
    ap.add_argument("--json", action="store_true", help="dump violations as JSON lines")
    args = ap.parse_args()

    failed = False
    print(f"{'suite':<16} {'seed':>6} {'status':>7} {'checked':>8} {'finds':>6} {'viol':>5} {'s':>6}")
    for seed in args.seeds:
        for name in args.suites:
            opts = {"thin": args.thin} if name.startswith("jumpfree") else {}
            t0 = time.time()
            res = run_suite(name, args.trials, seed, opts, jobs=args.jobs)
            dt = time.time() - t0
            print(f"{name:<16} {seed:>6} {res.status:>7} {res.checked:>8} {res.finds:>6} "
                  f"{res.violation_count:>5} {dt:>6.1f}")
            if args.json:
                for v in res.violations:
                    print(json.dumps(v))
            failed |= not res.passed
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
