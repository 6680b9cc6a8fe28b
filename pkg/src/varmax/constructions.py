"""Rooted trees whose p-variational constant grows without bound.

Levels run 0..L with L = l_{m+1}. Every vertex on level l_i - 1 (i = 1..m)
has k children, every vertex on level L - 1 has k^2 children (the leaves),
and all other non-leaf vertices have exactly one child. The tree is
level-homogeneous, so all quantities of interest depend on the level only.

With f the indicator of the root, M f(x) = 1 / |B(x, level(x))| for x != root,
which gives the variation of M f in closed form from level-wise ball counts.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from .graphs import Graph

DEFAULT_BUDGET = 2_000_000


def vertex_budget() -> int:
    return int(os.environ.get("VARMAX_BUDGET_VERTICES", DEFAULT_BUDGET))


class ConstructionBudgetError(RuntimeError):
    pass


def level_lengths(m: int) -> list[int]:
    """l_0..l_{m+1} from the recursion l_i = i + sum_{j<i} l_j, checked against 3*2^(i-1) - 1."""
    if m < 0:
        raise ValueError("m must be >= 0")
    ls = [1]
    for i in range(1, m + 2):
        ls.append(i + sum(ls))
    for i, x in enumerate(ls[1:], start=1):
        assert x == 3 * 2 ** (i - 1) - 1, (i, x)
    return ls


@dataclass(frozen=True)
class ConstructionSpec:
    k: int
    m: int

    def __post_init__(self):
        if self.k < 2 or self.m < 1:
            raise ValueError("construction needs k >= 2 and m >= 1")

    @cached_property
    def levels(self) -> list[int]:
        return level_lengths(self.m)

    @property
    def depth(self) -> int:
        return self.levels[self.m + 1]

    @cached_property
    def children(self) -> list[int]:
        """Number of children of each vertex on level t = 0..depth."""
        c = [1] * (self.depth + 1)
        for i in range(1, self.m + 1):
            c[self.levels[i] - 1] = self.k
        c[self.depth - 1] = self.k ** 2
        c[self.depth] = 0
        return c

    @cached_property
    def level_counts(self) -> list[int]:
        counts = [1]
        for t in range(self.depth):
            counts.append(counts[-1] * self.children[t])
        return counts

    @property
    def n_vertices(self) -> int:
        return sum(self.level_counts)

    def descendants(self, a: int, t: int) -> int:
        """Descendants on level t of a single vertex on level a (t >= a)."""
        return math.prod(self.children[a:t])

    def ball_size(self, level: int, radius: int) -> int:
        """|B(x, radius)| for any vertex x on ``level``."""
        L = self.depth
        total = sum(self.descendants(level, t) for t in range(level, min(L, level + radius) + 1))
        for a in range(max(0, level - radius), level):
            top = min(L, radius - level + 2 * a)
            for t in range(a, top + 1):
                total += self.descendants(a, t) - (self.descendants(a + 1, t) if t > a else 0)
        return total

    @property
    def marked_levels(self) -> dict[str, int]:
        ls = self.levels
        out = {"v": 0}
        for i in range(1, self.m + 2):
            out[f"a{i}"] = ls[i] - 1
        for i in range(1, self.m + 1):
            out[f"b{i}"] = ls[i]
        out["w"] = ls[self.m] + 1
        return out


@dataclass
class BuiltTree:
    spec: ConstructionSpec
    graph: Graph
    level_of: list[int]
    marked: dict[str, int]


def build_tree(spec: ConstructionSpec, budget: int | None = None) -> BuiltTree:
    """Explicit tree; vertices numbered level by level, the first-child chain is the spine."""
    budget = vertex_budget() if budget is None else budget
    if spec.n_vertices > budget:
        raise ConstructionBudgetError(f"{spec.n_vertices} vertices exceed budget {budget}")
    edges = []
    level_of = [0]
    first_of_level = [0]
    frontier = [0]
    nxt = 1
    for t in range(spec.depth):
        new = []
        first_of_level.append(nxt)
        for parent in frontier:
            for _ in range(spec.children[t]):
                edges.append((parent, nxt))
                level_of.append(t + 1)
                new.append(nxt)
                nxt += 1
        frontier = new
    g = Graph(nxt, tuple(edges), f"construction:k={spec.k},m={spec.m}")
    marked = {name: first_of_level[lvl] for name, lvl in spec.marked_levels.items()}
    return BuiltTree(spec, g, level_of, marked)


@dataclass
class ConstructionReport:
    spec: ConstructionSpec
    p: object
    var_f: int
    var_mf_power: object  # exact Fraction for integer p, float otherwise
    ratio: object  # Fraction when p == 1
    mf_levels: list[Fraction]
    mf_bm: Fraction
    mf_w: Fraction
    gap_bound: float | None

    def summary(self) -> dict:
        return {
            "k": self.spec.k, "m": self.spec.m, "p": str(self.p), "vertices": self.spec.n_vertices,
            "var_f": self.var_f, "ratio": float(self.ratio),
            "ratio_exact": str(self.ratio) if isinstance(self.ratio, Fraction) else "",
            "mf_bm": str(self.mf_bm), "mf_w": str(self.mf_w),
            "bound": self.gap_bound,
        }


def maximal_by_level(spec: ConstructionSpec) -> list[Fraction]:
    """M f on each level for f = indicator of the root."""
    return [Fraction(1)] + [Fraction(1, spec.ball_size(lv, lv)) for lv in range(1, spec.depth + 1)]


def construction_ratio(spec: ConstructionSpec, p=1) -> ConstructionReport:
    mf = maximal_by_level(spec)
    counts = spec.level_counts
    integer_p = float(p).is_integer()
    if integer_p:
        k = int(p)
        power = sum((counts[t] * abs(mf[t] - mf[t - 1]) ** k for t in range(1, spec.depth + 1)), Fraction(0))
    else:
        power = math.fsum(counts[t] * float(abs(mf[t] - mf[t - 1])) ** float(p) for t in range(1, spec.depth + 1))
    ratio = power if p == 1 else float(power) ** (1.0 / float(p))
    lv = spec.marked_levels
    bm, w = mf[lv[f"b{spec.m}"]], mf[lv["w"]]
    gap = bm - w
    bound = float(spec.k ** spec.m) ** (1.0 / float(p)) * float(gap) if gap > 0 else None
    return ConstructionReport(spec, p, 1, power, ratio, mf, bm, w, bound)


def witness_large_constant(p, target: float, budget: int | None = None, k_max: int = 10_000):
    """First k (with m = ceil(p) + 1) whose root-indicator ratio exceeds ``target``."""
    budget = vertex_budget() if budget is None else budget
    m = math.ceil(float(p)) + 1
    best = None
    for k in range(2, k_max + 1):
        spec = ConstructionSpec(k, m)
        if spec.n_vertices > budget:
            raise ConstructionBudgetError(
                f"budget {budget} reached at k={k}; best ratio {best.ratio if best else None}")
        rep = construction_ratio(spec, p)
        if best is None or rep.ratio > best.ratio:
            best = rep
        if rep.ratio > target:
            return rep
    raise ConstructionBudgetError(f"k_max reached; best ratio {float(best.ratio)}")
