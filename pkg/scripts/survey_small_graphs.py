#!/usr/bin/env python3
"""Exact p = 1 constants of all connected graphs on 3..N vertices, one CSV per order."""

import argparse
import time

from varmax.reporting import RunRecord, write_csv
from varmax.survey import survey_order


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--max-n", type=int, default=5)
    ap.add_argument("--outdir", default="results")
    ap.add_argument("--time-budget", type=float, default=None, help="seconds per graph")
    args = ap.parse_args()
    for n in range(3, args.max_n + 1):
        t0 = time.monotonic()
        rec = RunRecord.start("scripts/survey_small_graphs.py")
        res = survey_order(n, 1, "exact", time_budget=args.time_budget)
        write_csv(f"{args.outdir}/survey_n{n}.csv", res.rows(), rec)
        mult = sorted(res.multiset().items())
        print(f"n={n}: {len(res.certificates)} graphs, {time.monotonic() - t0:.1f}s")
        for v, k in mult:
            print(f"    {v}  x{k}")
        for g6, err in res.errors.items():
            print(f"    {g6}: {err.splitlines()[0]}")


if __name__ == "__main__":
    main()
