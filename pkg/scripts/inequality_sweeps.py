#!/usr/bin/env python3
"""Seeded margin sweeps for the complete-graph inequalities; writes a JSON report."""

import argparse
import json
import sys

from varmax.inequalities import verify_all
from varmax.reporting import RunRecord, write_json


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--size", type=int, default=1_000_000)
    ap.add_argument("--trials", type=int, default=100_000)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--out", default="results/inequalities.json")
    args = ap.parse_args()
    rec = RunRecord.start("scripts/inequality_sweeps.py", seed=args.seed)
    rep = verify_all(args.size, args.trials, args.seed)
    write_json(args.out, {"report": rep}, rec)
    print(json.dumps(rep, indent=2, default=str))
    sys.exit(0 if rep["ok"] else 1)


if __name__ == "__main__":
    main()
