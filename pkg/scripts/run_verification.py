"""Run every verification suite and write the reports as JSON.

    python3 scripts/run_verification.py --budget medium --out reports/
"""
import argparse
import json
import pathlib

from fieldred import harness
from fieldred.config import Budget


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--budget", choices=["small", "medium", "large"], default=None)
    ap.add_argument("--out", default=None, help="directory for one JSON file per suite")
    ap.add_argument("--timing", action="store_true")
    args = ap.parse_args()
    budget = Budget.resolve(args.budget)
    out = pathlib.Path(args.out) if args.out else None
    if out:
        out.mkdir(parents=True, exist_ok=True)
    failed = 0
    for rep in harness.verify_all(budget):
        print(rep.to_text(args.timing).splitlines()[0])
        failed += not rep.passed
        if out:
            (out / f"{rep.criterion:02d}-{rep.suite}.json").write_text(rep.to_json(args.timing) + "\n")
    raise SystemExit(1 if failed else 0)


if __name__ == "__main__":
    main()
