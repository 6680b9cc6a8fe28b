"""Exact 1-variational constants by region decomposition.

For f >= 0 with min f = 0 pinned at a vertex, the function space splits into
polyhedral cones on which every M f(v) is one fixed ball average and every
edge difference has a fixed sign. On such a cone, normalised by Var f = 1, the
ratio Var(M f) / Var(f) is a convex piecewise-linear function, so its maximum
sits at an extreme ray. The engine enumerates the full-dimensional cones by a
depth-first search (radius choices first, then edge signs), keeps the cone in
double-description form, and evaluates the ratio exactly at every extreme ray.

Closures of the full-dimensional cones cover the pinned orthant, so restricting
to them loses no candidate.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Sequence

from . import exact_lp
from .exact_lp import GE, EQ, Constraint, LinearProgram, OrthantCone, Polytope, integer_row
from .graphs import Graph, GraphError, balls, distances, emit_graph6, orbit_representatives
from .maximal import format_number, maximal_function, p_variation, variation_ratio

EXACT_LIMIT = 7


class BudgetExhausted(RuntimeError):
    pass


@dataclass
class ConstantCertificate:
    graph: str
    n: int
    edges: int
    p: object
    value: object
    extremizer: tuple
    mode: str  # "exact" | "numeric-lower-bound"
    stats: dict = field(default_factory=dict)
    value_as_fraction: str = ""

    def row(self) -> dict:
        return {
            "graph6": self.graph,
            "n": self.n,
            "edges": self.edges,
            "p": format_number(self.p) if not isinstance(self.p, str) else self.p,
            "value": format_number(self.value),
            "value_as_fraction": self.value_as_fraction,
            "mode": self.mode,
            "extremizer": " ".join(format_number(x) for x in self.extremizer),
            "regions_feasible": self.stats.get("regions_feasible", ""),
            "time_ms": round(1000 * self.stats.get("wall_time", 0.0)),
        }

    def to_dict(self) -> dict:
        d = asdict(self)
        d["p"] = format_number(self.p)
        d["value"] = format_number(self.value)
        d["extremizer"] = [format_number(x) for x in self.extremizer]
        return d


def _ball_rows(g: Graph, pinned: int):
    """Per vertex, per chosen radius: integer rows (reduced coords) saying that radius wins."""
    bt = balls(g)
    keep = [v for v in range(g.n) if v != pinned]
    blocks = []
    for v in range(g.n):
        sizes = bt.sizes(v)
        members = [set(b) for b in bt.members[v]]
        options = []
        for r in range(len(sizes)):
            rows = []
            for s in range(len(sizes)):
                if s == r:
                    continue
                row = [sizes[s] * (w in members[r]) - sizes[r] * (w in members[s]) for w in keep]
                if any(row):
                    rows.append(integer_row(row))
            options.append((r, rows))
        blocks.append((v, options))
    return blocks


def _edge_blocks(g: Graph, pinned: int):
    pos = {v: i for i, v in enumerate(w for w in range(g.n) if w != pinned)}
    d = g.n - 1
    blocks = []
    for u, w in g.edges:
        row = [0] * d
        if u in pos:
            row[pos[u]] += 1
        if w in pos:
            row[pos[w]] -= 1
        row = tuple(row)
        blocks.append(((u, w), [(1, [row]), (-1, [tuple(-x for x in row)])]))
    return blocks


def _lift(ray: Sequence[int], pinned: int) -> tuple[int, ...]:
    r = list(ray)
    r.insert(pinned, 0)
    return tuple(r)


class _Search:
    def __init__(self, g: Graph, pinned: int, method: str, deadline: float | None, check_regions: bool):
        self.g = g
        self.pinned = pinned
        self.method = method
        self.deadline = deadline
        self.check_regions = check_regions
        self.bt = balls(g)
        self.blocks = [("radius", v, opts) for v, opts in _ball_rows(g, pinned)]
        self.blocks += [("edge", e, opts) for e, opts in _edge_blocks(g, pinned)]
        self.stats = {"regions_explored": 0, "regions_pruned": 0, "regions_feasible": 0,
                      "candidates_evaluated": 0, "region_mismatches": 0}
        self.cache: dict[tuple, Fraction] = {}
        self.best: tuple | None = None  # (ratio, normalised witness)

    # -- candidate evaluation, independent of the region bookkeeping
    def evaluate(self, f: tuple[int, ...]):
        if f in self.cache:
            return
        self.stats["candidates_evaluated"] += 1
        ratio = variation_ratio(self.g, f, 1, self.bt)
        self.cache[f] = ratio
        var = p_variation(self.g, f, 1)
        witness = tuple(Fraction(x) / var for x in f)
        if self.best is None or ratio > self.best[0] or (ratio == self.best[0] and witness < self.best[1]):
            self.best = (ratio, witness)

    def check_region(self, f, radii):
        mp = maximal_function(self.g, f, self.bt)
        for v, r in radii.items():
            ball = self.bt.members[v][r]
            if Fraction(sum(f[w] for w in ball), len(ball)) != mp.mvalues[v]:
                self.stats["region_mismatches"] += 1

    def run(self):
        d = self.g.n - 1
        if self.method == "dd":
            self._dfs_dd(0, OrthantCone(d), {}, {})
        elif self.method == "lp":
            unit = [tuple(int(i == j) for i in range(d)) for j in range(d)]
            self._dfs_lp(0, unit, {}, {})
        else:
            raise ValueError(f"unknown method {self.method!r}")

    def _tick(self):
        self.stats["regions_explored"] += 1
        if self.deadline is not None and time.monotonic() > self.deadline:
            raise BudgetExhausted

    def _leaf(self, rays, radii, signs):
        self.stats["regions_feasible"] += 1
        for ray in rays:
            f = _lift(ray, self.pinned)
            self.evaluate(f)
            if self.check_regions:
                self.check_region(f, radii)

    def _dfs_dd(self, depth, cone, radii, signs):
        if depth == len(self.blocks):
            self._leaf(cone.rays, radii, signs)
            return
        kind, key, options = self.blocks[depth]
        for choice, rows in options:
            self._tick()
            c = cone
            for row in rows:
                c = c.add(row, require_full_dim=True)
                if c is None:
                    break
            if c is None:
                self.stats["regions_pruned"] += 1
                continue
            (radii if kind == "radius" else signs)[key] = choice
            self._dfs_dd(depth + 1, c, radii, signs)
        (radii if kind == "radius" else signs).pop(key, None)

    # -- slower route through the simplex kernel, used for cross-validation
    def _full_dim_lp(self, rows) -> bool:
        d = self.g.n - 1
        cons = [Constraint(list(r) + [-1], GE, 0) for r in rows]
        cons.append(Constraint([1] * d + [0], "<=", 1))
        cons.append(Constraint([0] * d + [1], "<=", 1))
        res = exact_lp.solve_lp(LinearProgram(d + 1, [0] * d + [1], cons))
        return res.status == "optimal" and res.value > 0

    def _dfs_lp(self, depth, rows, radii, signs):
        if depth == len(self.blocks):
            d = self.g.n - 1
            norm = [0] * d
            for (u, w), s in signs.items():
                for v, sgn in ((u, s), (w, -s)):
                    if v != self.pinned:
                        norm[v - (v > self.pinned)] += sgn
            cons = [Constraint(r, GE, 0) for r in rows] + [Constraint(norm, EQ, 1)]
            verts = exact_lp.enumerate_vertices(Polytope(d, cons))
            rays = []
            for x in verts:
                den = 1
                for xi in x:
                    den = den * xi.denominator // __import__("math").gcd(den, xi.denominator)
                rays.append(exact_lp._primitive([int(xi * den) for xi in x]))
            self._leaf(rays, radii, signs)
            return
        kind, key, options = self.blocks[depth]
        for choice, new_rows in options:
            self._tick()
            cand = rows + list(new_rows)
            if not self._full_dim_lp(cand):
                self.stats["regions_pruned"] += 1
                continue
            (radii if kind == "radius" else signs)[key] = choice
            self._dfs_lp(depth + 1, cand, radii, signs)
        (radii if kind == "radius" else signs).pop(key, None)


def _search_pinned(args):
    g, pinned, method, deadline, check_regions = args
    s = _Search(g, pinned, method, deadline, check_regions)
    exhausted = False
    try:
        s.run()
    except BudgetExhausted:
        exhausted = True
    return s.best, s.stats, exhausted


def exact_constant_p1(g: Graph, *, symmetry: bool = True, method: str = "dd", max_n: int = EXACT_LIMIT,
                      time_budget: float | None = None, threads: int = 1,
                      check_regions: bool = False) -> ConstantCertificate:
    """Certified C_{G,1} as a Fraction with an extremizer normalised to Var f = 1, min f = 0."""
    if not g.is_connected():
        raise GraphError("sharp constants need a connected graph")
    if not 2 <= g.n <= max_n:
        raise GraphError(f"exact engine supports 2 <= n <= {max_n}")
    t0 = time.monotonic()
    deadline = None if time_budget is None else t0 + time_budget
    pins = orbit_representatives(g) if symmetry else list(range(g.n))
    jobs = [(g, v, method, deadline, check_regions) for v in pins]
    if threads > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=threads) as ex:
            results = list(ex.map(_search_pinned, jobs))
    else:
        results = [_search_pinned(j) for j in jobs]
    stats = {"pinned_vertices": len(pins)}
    best = None
    exhausted = False
    for b, st, ex in results:
        exhausted |= ex
        for k, v in st.items():
            stats[k] = stats.get(k, 0) + v
        if b is not None and (best is None or b[0] > best[0] or (b[0] == best[0] and b[1] < best[1])):
            best = b
    stats["wall_time"] = time.monotonic() - t0
    mode = "numeric-lower-bound" if exhausted else "exact"
    if best is None:
        # budget ran out before any cone was completed
        from .numeric import numeric_lower_bound

        fallback = numeric_lower_bound(g, 1)
        fallback.stats.update(stats, wall_time=time.monotonic() - t0)
        return fallback
    value, witness = best
    return ConstantCertificate(emit_graph6(g), g.n, len(g.edges), 1, value, witness, mode, stats,
                               format_number(value))
