"""Exact rational linear programming and polyhedral enumeration.

Everything here works over ``Fraction``/``int``; nothing is ever rounded.

* ``solve_lp``: two-phase primal simplex with Bland's rule (free variables).
* ``enumerate_vertices``: exhaustive basis enumeration for bounded polyhedra.
* ``OrthantCone``: double-description representation of a cone
  ``{x >= 0 : a_k . x >= 0}`` that supports adding one halfspace at a time.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

LE, GE, EQ = "<=", ">=", "="
_FLIP = {LE: GE, GE: LE, EQ: EQ}


class LPError(ValueError):
    pass


class UnboundedPolyhedron(LPError):
    pass


class BudgetExceeded(LPError):
    pass


def _frac_row(row: Iterable) -> tuple[Fraction, ...]:
    return tuple(Fraction(x) for x in row)


@dataclass(frozen=True)
class Constraint:
    row: tuple[Fraction, ...]
    rel: str
    rhs: Fraction

    def __post_init__(self):
        if self.rel not in (LE, GE, EQ):
            raise LPError(f"unknown relation {self.rel!r}")
        object.__setattr__(self, "row", _frac_row(self.row))
        object.__setattr__(self, "rhs", Fraction(self.rhs))

    def lhs(self, x: Sequence) -> Fraction:
        return sum((a * xi for a, xi in zip(self.row, x)), Fraction(0))

    def satisfied(self, x: Sequence) -> bool:
        v = self.lhs(x)
        return v <= self.rhs if self.rel == LE else v >= self.rhs if self.rel == GE else v == self.rhs


@dataclass(frozen=True)
class LinearProgram:
    """Variables are free; bounds such as ``x >= 0`` are ordinary constraints."""

    nvars: int
    objective: tuple[Fraction, ...]
    constraints: tuple[Constraint, ...]
    sense: str = "max"

    def __post_init__(self):
        if self.sense not in ("max", "min"):
            raise LPError("sense must be 'max' or 'min'")
        object.__setattr__(self, "objective", _frac_row(self.objective))
        cons = tuple(c if isinstance(c, Constraint) else Constraint(*c) for c in self.constraints)
        object.__setattr__(self, "constraints", cons)
        if len(self.objective) != self.nvars:
            raise LPError("objective length differs from nvars")
        for c in cons:
            if len(c.row) != self.nvars:
                raise LPError("constraint row length differs from nvars")

    def value(self, x: Sequence) -> Fraction:
        return sum((c * xi for c, xi in zip(self.objective, x)), Fraction(0))


@dataclass(frozen=True)
class LPResult:
    status: str  # "optimal" | "infeasible" | "unbounded"
    value: Fraction | None = None
    witness: tuple[Fraction, ...] | None = None
    pivots: int = 0


# --------------------------------------------------------------------------
# simplex


class _Tableau:
    def __init__(self, rows, rhs, basis):
        self.rows = rows
        self.rhs = rhs
        self.basis = basis
        self.pivots = 0

    def pivot(self, i: int, j: int):
        rows, rhs = self.rows, self.rhs
        piv = rows[i][j]
        rows[i] = [a / piv for a in rows[i]]
        rhs[i] /= piv
        pr = rows[i]
        for k in range(len(rows)):
            if k != i and rows[k][j] != 0:
                f = rows[k][j]
                rows[k] = [a - f * b for a, b in zip(rows[k], pr)]
                rhs[k] -= f * rhs[i]
        self.basis[i] = j
        self.pivots += 1

    def maximize(self, cost: Sequence[Fraction], allowed: Sequence[bool]) -> str:
        """Bland's rule; returns "optimal" or "unbounded"."""
        ncols = len(cost)
        while True:
            cb = [cost[b] for b in self.basis]
            enter = -1
            for j in range(ncols):
                if not allowed[j] or j in self.basis:
                    continue
                red = cost[j] - sum((c * row[j] for c, row in zip(cb, self.rows) if c), Fraction(0))
                if red > 0:
                    enter = j
                    break
            if enter < 0:
                return "optimal"
            leave, best = -1, None
            for i, row in enumerate(self.rows):
                a = row[enter]
                if a > 0:
                    ratio = self.rhs[i] / a
                    if best is None or ratio < best or (ratio == best and self.basis[i] < self.basis[leave]):
                        leave, best = i, ratio
            if leave < 0:
                return "unbounded"
            self.pivot(leave, enter)


def solve_lp(lp: LinearProgram) -> LPResult:
    n = lp.nvars
    cons = []
    for c in lp.constraints:
        row, rel, b = list(c.row), c.rel, c.rhs
        if b < 0:
            row, rel, b = [-a for a in row], _FLIP[rel], -b
        cons.append((row, rel, b))
    m = len(cons)
    # columns: x+ (n), x- (n), one slack/surplus per inequality, one artificial per >=/= row
    n_slack = sum(1 for _, rel, _ in cons if rel != EQ)
    n_art = sum(1 for _, rel, _ in cons if rel != LE)
    ncols = 2 * n + n_slack + n_art
    rows, rhs, basis = [], [], []
    s_col, a_col = 2 * n, 2 * n + n_slack
    art_cols = []
    for row, rel, b in cons:
        r = [Fraction(0)] * ncols
        for j, a in enumerate(row):
            r[j] = a
            r[n + j] = -a
        if rel == LE:
            r[s_col] = Fraction(1)
            basis.append(s_col)
            s_col += 1
        else:
            if rel == GE:
                r[s_col] = Fraction(-1)
                s_col += 1
            r[a_col] = Fraction(1)
            basis.append(a_col)
            art_cols.append(a_col)
            a_col += 1
        rows.append(r)
        rhs.append(b)
    tab = _Tableau(rows, rhs, basis)
    is_art = [False] * ncols
    for j in art_cols:
        is_art[j] = True

    if art_cols:
        phase1 = [Fraction(-1) if is_art[j] else Fraction(0) for j in range(ncols)]
        tab.maximize(phase1, [True] * ncols)
        infeas = sum((tab.rhs[i] for i, b in enumerate(tab.basis) if is_art[b]), Fraction(0))
        if infeas > 0:
            return LPResult("infeasible", pivots=tab.pivots)
        # drive artificials out of the basis; drop rows that are redundant
        i = 0
        while i < len(tab.rows):
            if is_art[tab.basis[i]]:
                j = next((j for j in range(ncols) if not is_art[j] and tab.rows[i][j] != 0), -1)
                if j >= 0:
                    tab.pivot(i, j)
                else:
                    del tab.rows[i], tab.rhs[i], tab.basis[i]
                    continue
            i += 1

    sign = 1 if lp.sense == "max" else -1
    cost = [Fraction(0)] * ncols
    for j, c in enumerate(lp.objective):
        cost[j] = sign * c
        cost[n + j] = -sign * c
    status = tab.maximize(cost, [not a for a in is_art])
    if status == "unbounded":
        return LPResult("unbounded", pivots=tab.pivots)
    full = [Fraction(0)] * ncols
    for i, b in enumerate(tab.basis):
        full[b] = tab.rhs[i]
    x = tuple(full[j] - full[n + j] for j in range(n))
    return LPResult("optimal", lp.value(x), x, tab.pivots)


def feasible(nvars: int, constraints: Sequence) -> LPResult:
    """Phase-I verdict; an optimal result carries a feasible witness."""
    lp = LinearProgram(nvars, (0,) * nvars, tuple(constraints))
    return solve_lp(lp)


def dual_certificate(lp: LinearProgram, result: LPResult) -> tuple[Fraction, ...]:
    """Multipliers y with A^T y = c and sign conditions such that b.y equals the optimum.

    For a maximization, ``y >= 0`` on ``<=`` rows and ``y <= 0`` on ``>=`` rows
    certify ``c.x <= b.y`` for every feasible x. Raises if verification fails.
    """
    if result.status != "optimal":
        raise LPError("dual certificate needs an optimal primal")
    sign = 1 if lp.sense == "max" else -1
    m = len(lp.constraints)
    dual_cons = []
    for j in range(lp.nvars):
        dual_cons.append(Constraint([c.row[j] for c in lp.constraints], EQ, sign * lp.objective[j]))
    for i, c in enumerate(lp.constraints):
        unit = [0] * m
        unit[i] = 1
        if c.rel == LE:
            dual_cons.append(Constraint(unit, GE, 0))
        elif c.rel == GE:
            dual_cons.append(Constraint(unit, LE, 0))
    dual = LinearProgram(m, [c.rhs for c in lp.constraints], dual_cons, sense="min")
    res = solve_lp(dual)
    if res.status != "optimal":
        raise LPError(f"dual LP is {res.status}")
    y = res.witness
    if not all(c.satisfied(y) for c in dual_cons):
        raise LPError("dual multipliers violate dual feasibility")
    if res.value != sign * result.value:
        raise LPError("duality gap is nonzero")
    return y


# --------------------------------------------------------------------------
# dense exact linear algebra


def solve_square(rows: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]) -> tuple[Fraction, ...] | None:
    """Unique solution of an (over)determined consistent system, else None."""
    m = [list(map(Fraction, r)) + [Fraction(b)] for r, b in zip(rows, rhs)]
    ncols = len(rows[0]) if rows else 0
    piv_cols = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            return None
        m[r], m[p] = m[p], m[r]
        pv = m[r][c]
        m[r] = [a / pv for a in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        piv_cols.append(c)
        r += 1
    if any(row[-1] != 0 for row in m[r:]):
        return None
    return tuple(m[i][-1] for i in range(ncols))


def matrix_rank(rows: Sequence[Sequence]) -> int:
    m = [list(map(Fraction, r)) for r in rows]
    if not m:
        return 0
    rank, ncols = 0, len(m[0])
    for c in range(ncols):
        p = next((i for i in range(rank, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[rank], m[p] = m[p], m[rank]
        for i in range(rank + 1, len(m)):
            if m[i][c] != 0:
                f = m[i][c] / m[rank][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[rank])]
        rank += 1
    return rank


# --------------------------------------------------------------------------
# polytopes


@dataclass
class Polytope:
    nvars: int
    constraints: tuple[Constraint, ...]
    _vertices: list | None = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        self.constraints = tuple(c if isinstance(c, Constraint) else Constraint(*c) for c in self.constraints)

    def contains(self, x: Sequence) -> bool:
        return all(c.satisfied(x) for c in self.constraints)

    def is_bounded(self) -> bool:
        for j in range(self.nvars):
            for s in (1, -1):
                obj = [0] * self.nvars
                obj[j] = s
                res = solve_lp(LinearProgram(self.nvars, obj, self.constraints))
                if res.status == "unbounded":
                    return False
        return True


def enumerate_vertices(poly: Polytope, budget: int = 2_000_000) -> list[tuple[Fraction, ...]]:
    """All extreme points, by solving every square subsystem of active constraints."""
    if poly._vertices is not None:
        return poly._vertices
    d = poly.nvars
    eqs = [c for c in poly.constraints if c.rel == EQ]
    ineqs = [c for c in poly.constraints if c.rel != EQ]
    if feasible(d, poly.constraints).status == "infeasible":
        poly._vertices = []
        return []
    if not poly.is_bounded():
        raise UnboundedPolyhedron("polyhedron is unbounded")
    k = d - matrix_rank([c.row for c in eqs])
    if math.comb(len(ineqs), k) > budget:
        raise BudgetExceeded(f"C({len(ineqs)},{k}) subsystems exceed budget {budget}")
    seen: dict[tuple, None] = {}
    for subset in itertools.combinations(ineqs, k):
        active = eqs + list(subset)
        x = solve_square([c.row for c in active], [c.rhs for c in active])
        if x is not None and x not in seen and poly.contains(x):
            seen[x] = None
    poly._vertices = sorted(seen)
    return poly._vertices


# --------------------------------------------------------------------------
# double description for cones in the nonnegative orthant


def _primitive(v: Sequence[int]) -> tuple[int, ...]:
    g = 0
    for x in v:
        g = math.gcd(g, x)
    return tuple(x // g for x in v) if g > 1 else tuple(v)


def integer_row(row: Sequence) -> tuple[int, ...]:
    """Scale a rational row to a primitive integer row with the same sign pattern."""
    fr = [Fraction(x) for x in row]
    lcm = 1
    for x in fr:
        lcm = lcm * x.denominator // math.gcd(lcm, x.denominator)
    return _primitive([int(x * lcm) for x in fr])


class OrthantCone:
    """Cone ``{x in R^d : x >= 0, a_k . x >= 0 for all added rows}`` as extreme rays.

    Each ray carries the bitmask of constraints it makes tight; adjacency of
    rays uses the combinatorial test, so the ray list stays minimal.
    Instances are immutable: ``add`` returns a new cone.
    """

    __slots__ = ("dim", "ncons", "rays", "zeros")

    def __init__(self, dim: int, rays=None, zeros=None, ncons=None):
        self.dim = dim
        if rays is None:
            rays = [tuple(1 if i == j else 0 for i in range(dim)) for j in range(dim)]
            full = (1 << dim) - 1
            zeros = [full & ~(1 << j) for j in range(dim)]
            ncons = dim
        self.rays = rays
        self.zeros = zeros
        self.ncons = ncons

    def is_zero(self) -> bool:
        return not self.rays

    def add(self, a: Sequence[int], require_full_dim: bool = False) -> "OrthantCone | None":
        """Intersect with ``a . x >= 0``.

        With ``require_full_dim`` (valid when this cone is full-dimensional),
        returns None as soon as the result loses dimension.
        """
        bit = 1 << self.ncons
        vals = [sum(x * y for x, y in zip(a, r)) for r in self.rays]
        pos = [i for i, v in enumerate(vals) if v > 0]
        if require_full_dim and not pos:
            return None
        neg = [i for i, v in enumerate(vals) if v < 0]
        rays, zeros = [], []
        for i, v in enumerate(vals):
            if v > 0:
                rays.append(self.rays[i])
                zeros.append(self.zeros[i])
            elif v == 0:
                rays.append(self.rays[i])
                zeros.append(self.zeros[i] | bit)
        if neg:
            threshold = self.dim - 2
            old_zeros = self.zeros
            nrays = len(self.rays)
            for i in pos:
                zi = old_zeros[i]
                for j in neg:
                    common = zi & old_zeros[j]
                    if common.bit_count() < threshold:
                        continue
                    if any(k != i and k != j and (old_zeros[k] & common) == common for k in range(nrays)):
                        continue
                    vi, vj = vals[i], -vals[j]
                    ri, rj = self.rays[i], self.rays[j]
                    rays.append(_primitive([vi * y + vj * x for x, y in zip(ri, rj)]))
                    zeros.append(common | bit)
        return OrthantCone(self.dim, rays, zeros, self.ncons + 1)


def orthant_polytope_vertices(nvars: int, constraints: Sequence) -> list[tuple[Fraction, ...]]:
    """Vertices of ``{x >= 0} ∩ constraints`` by homogenisation and double description.

    Independent of ``enumerate_vertices``; used to cross-check it.
    """
    cone = OrthantCone(nvars + 1)
    for c in constraints:
        c = c if isinstance(c, Constraint) else Constraint(*c)
        # homogenise a.x REL b  ->  (sign)(b t - a.x) >= 0
        base = integer_row(list(-a for a in c.row) + [c.rhs])
        rows = {LE: [base], GE: [tuple(-x for x in base)], EQ: [base, tuple(-x for x in base)]}[c.rel]
        for row in rows:
            cone = cone.add(row)
    out = set()
    for r in cone.rays:
        if r[-1] == 0:
            if any(r[:-1]):
                raise UnboundedPolyhedron("polyhedron has a recession direction")
            continue
        out.add(tuple(Fraction(x, r[-1]) for x in r[:-1]))
    return sorted(out)


# --------------------------------------------------------------------------
# text dump format: "max|min c1 c2 ..." then one "a1 a2 ... REL b" per line


def dumps_lp(lp: LinearProgram) -> str:
    fmt = lambda x: str(Fraction(x))  # noqa: E731
    lines = [f"{lp.sense} " + " ".join(fmt(c) for c in lp.objective)]
    for c in lp.constraints:
        lines.append(" ".join(fmt(a) for a in c.row) + f" {c.rel} {fmt(c.rhs)}")
    return "\n".join(lines) + "\n"


def loads_lp(text: str) -> LinearProgram:
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise LPError("empty LP dump")
    head = lines[0].split()
    sense, obj = head[0], [Fraction(t) for t in head[1:]]
    cons = []
    for ln in lines[1:]:
        toks = ln.split()
        if len(toks) < 3 or toks[-2] not in (LE, GE, EQ):
            raise LPError(f"bad constraint line {ln!r}")
        cons.append(Constraint([Fraction(t) for t in toks[:-2]], toks[-2], Fraction(toks[-1])))
    return LinearProgram(len(obj), obj, cons, sense)
