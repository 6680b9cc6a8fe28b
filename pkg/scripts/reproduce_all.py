#!/usr/bin/env python3
"""Run every acceptance criterion and write a JSON summary.

    python scripts/reproduce_all.py --out results/reproduce.json [--skip-slow]
"""

import argparse
import sys

from varmax.acceptance import reproduce_all
from varmax.reporting import RunRecord, write_json


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", default="results/reproduce.json")
    ap.add_argument("--skip-slow", action="store_true")
    args = ap.parse_args()
    rec = RunRecord.start("scripts/reproduce_all.py")
    outcomes = reproduce_all(skip_slow=args.skip_slow)
    write_json(args.out, {"criteria": [o.__dict__ for o in outcomes]}, rec)
    failed = [o.name for o in outcomes if not o.passed]
    print(f"{len(outcomes) - len(failed)}/{len(outcomes)} passed" + (f"; failed: {failed}" if failed else ""))
    sys.exit(1 if failed else 0)


if __name__ == "__main__":
    main()
