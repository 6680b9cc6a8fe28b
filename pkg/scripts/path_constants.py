#!/usr/bin/env python3
"""Path constants at p = 1: exact up to P7, pattern search up to --max-n.

Prints the gap to 1 - 1/n for each path.
"""

import argparse
from fractions import Fraction

from varmax.graphs import named_graph
from varmax.numeric import SearchConfig, numeric_lower_bound
from varmax.sharp import exact_constant_p1


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--max-n", type=int, default=12)
    ap.add_argument("--exact-max", type=int, default=6)
    ap.add_argument("--restarts", type=int, default=40)
    args = ap.parse_args()
    cfg = SearchConfig(restarts=args.restarts)
    print(f"{'n':>3} {'exact':>8} {'numeric':>16} {'1-1/n - numeric':>18}")
    for n in range(3, args.max_n + 1):
        g = named_graph("P", n)
        exact = str(exact_constant_p1(g).value) if n <= args.exact_max else "-"
        num = numeric_lower_bound(g, 1, cfg).value
        print(f"{n:>3} {exact:>8} {num:16.12f} {float(1 - Fraction(1, n)) - num:18.3e}")


if __name__ == "__main__":
    main()
