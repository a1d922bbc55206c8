"""Command line entry point.

    jumpfree label  --config run.json --out runs/
    jumpfree verify --config run.json --out runs/ --jobs 4
    jumpfree fixtures --out fixtures/

Exit codes: 0 all checks pass, 1 a property check failed, 2 budget or config error.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from ..graph import DownwardViolation
from ..labelers import BudgetExceeded, MinDominanceError
from ..lattice import DomainError
from ..subsetsum import NotCapped, PreconditionError
from . import runner
from .config import load_config
from .fixtures import committee_config
from .rules import ConfigError

EXIT_OK, EXIT_FAIL, EXIT_ERROR = 0, 1, 2

STAGES = {
    "label": runner.run_label,
    "search": runner.run_search,
    "verify": runner.run_verify,
    "solve": runner.run_solve,
    "bench": runner.run_bench,
}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="jumpfree", description=__doc__.split("\n")[0])
    ap.add_argument("command", choices=[*STAGES, "fixtures"])
    ap.add_argument("--config", type=Path, help="experiment config (JSON)")
    ap.add_argument("--out", type=Path, default=Path("runs"), help="output directory")
    ap.add_argument("--seed", type=int, default=None, help="override the config seed")
    ap.add_argument("--jobs", type=int, default=1, help="worker processes for verify")
    return ap


def write_fixtures(out: Path) -> Path:
    out.mkdir(parents=True, exist_ok=True)
    path = out / "committee.json"
    path.write_text(runner.dumps(committee_config()))
    return path


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "fixtures":
        print(write_fixtures(args.out))
        return EXIT_OK
    if args.config is None:
        print("error: --config is required", file=sys.stderr)
        return EXIT_ERROR
    try:
        cfg = load_config(args.config, args.seed)
        if args.command == "verify":
            rec = runner.run_verify(cfg, jobs=args.jobs)
        else:
            rec = STAGES[args.command](cfg)
    except (ConfigError, BudgetExceeded, DomainError, DownwardViolation, MinDominanceError,
            NotCapped, PreconditionError, KeyError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    out = Path(cfg.output_path) if cfg.output_path and args.out == Path("runs") else args.out
    path = rec.write(out)
    for c in rec.checks:
        print(f"{'PASS' if c['passed'] else 'FAIL'}  {c['name']}")
    print(path)
    return EXIT_OK if rec.passed else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
