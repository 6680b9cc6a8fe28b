#!/usr/bin/env python3
"""Root-indicator ratio on the branching trees as k grows, for several p."""

import argparse

from varmax.constructions import ConstructionSpec, construction_ratio, vertex_budget


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--p", type=float, nargs="+", default=[0.5, 1.0, 1.5, 2.0])
    ap.add_argument("--k-max", type=int, default=40)
    args = ap.parse_args()
    for p in args.p:
        m = int(p) + 1
        print(f"p={p} (m={m})")
        for k in range(2, args.k_max + 1):
            spec = ConstructionSpec(k, m)
            # the ratio is analytic, but keep the sizes honest
            if spec.n_vertices > 1000 * vertex_budget():
                break
            rep = construction_ratio(spec, p)
            if k in (2, 3, 4, 6, 8) or k % 10 == 0:
                print(f"  k={k:>3}  vertices={spec.n_vertices:>14}  ratio={float(rep.ratio):.6f}")


if __name__ == "__main__":
    main()
