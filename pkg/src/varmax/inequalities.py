"""Numerical checks of the scalar inequalities behind the complete-graph bound.

Every checker returns a signed margin (right side minus left side); a
nonnegative margin, up to ``TOL``, means the instance satisfies the inequality.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .graphs import balls, named_graph
from .maximal import maximal_function, p_variation_power

TOL = 1e-10
P_GRID = np.round(np.arange(1, 100) / 100, 2)


class DomainError(ValueError):
    pass


@dataclass(frozen=True)
class PropositionInstance:
    n: int
    r: int
    p: float
    u: float
    x: tuple[float, ...]  # x_{r+1..n}
    y: tuple[float, ...]  # y_{1..r-1}

    def validate(self):
        if not 2 <= self.r < self.n:
            raise DomainError("need 2 <= r < n")
        if not 0 < self.p < 1:
            raise DomainError("need 0 < p < 1")
        if len(self.x) != self.n - self.r or len(self.y) != self.r - 1:
            raise DomainError("x needs n-r entries, y needs r-1 entries")
        if self.u < 0 or min(self.x, default=0) < 0 or min(self.y, default=self.u) < self.u:
            raise DomainError("need x >= 0 and y >= u >= 0")
        lhs, rhs = sum(self.x) + self.n * self.u, sum(self.y)
        if abs(lhs - rhs) > 1e-12 * max(1.0, abs(rhs)):
            raise DomainError("side condition sum(x) + n u = sum(y) violated")


def check_proposition(inst: PropositionInstance) -> float:
    inst.validate()
    p = inst.p
    sx = sum(xi ** p for xi in inst.x)
    rhs = (1 - 1 / inst.n) ** p * (sx + sum(yi ** p for yi in inst.y))
    lhs = sx + (inst.r - 1) * inst.u ** p
    return rhs - lhs


def _proposition_batch(n: int, r: int, count: int, rng: np.random.Generator) -> np.ndarray:
    p = rng.uniform(0.01, 0.99, count)
    u = np.abs(rng.standard_normal(count))
    x = np.abs(rng.standard_normal((count, n - r)))
    # sprinkle exact zeros and u = 0 to reach the boundary cases
    x[rng.random((count, n - r)) < 0.2] = 0.0
    u[rng.random(count) < 0.1] = 0.0
    w = rng.dirichlet(np.ones(r - 1), count) if r > 2 else np.ones((count, 1))
    corner = rng.random(count) < 0.25
    if r > 2 and corner.any():
        w[corner] = np.eye(r - 1)[rng.integers(0, r - 1, corner.sum())]
    slack = x.sum(axis=1) + (n - r + 1) * u
    y = u[:, None] + slack[:, None] * w
    pp = p[:, None]
    sx = (x ** pp).sum(axis=1)
    rhs = (1 - 1 / n) ** p * (sx + (y ** pp).sum(axis=1))
    lhs = sx + (r - 1) * u ** p
    return rhs - lhs


def proposition_sweep(size: int = 1_000_000, seed: int = 0, n_max: int = 12) -> dict:
    rng = np.random.default_rng(seed)
    pairs = [(n, r) for n in range(3, n_max + 1) for r in range(2, n)]
    alloc = rng.multinomial(size, np.ones(len(pairs)) / len(pairs))
    worst, arg = np.inf, None
    for (n, r), cnt in zip(pairs, alloc):
        if cnt == 0:
            continue
        margins = _proposition_batch(n, r, int(cnt), rng)
        i = int(np.argmin(margins))
        if margins[i] < worst:
            worst, arg = float(margins[i]), (n, r)
    return {"instances": size, "min_margin": worst, "argmin_nr": arg, "ok": worst >= -TOL}


# --------------------------------------------------------------------------
# the complete-graph inequality itself


@lru_cache(maxsize=None)
def _complete(n: int):
    g = named_graph("K", n)
    return g, balls(g)


@dataclass(frozen=True)
class VarCompleteCheck:
    margin: float
    lhs: float
    rhs: float
    r: int
    pipeline_gap: float  # relative deviation from the maximal-operator route


def check_varcomplete(n: int, p: float, f) -> VarCompleteCheck:
    f = np.asarray(f, dtype=float)
    if len(f) != n:
        raise DomainError("f must have n values")
    if (f < 0).any():
        raise DomainError("f must be nonnegative")
    a = np.sort(f)
    m = a.mean()
    r = int(np.searchsorted(a, m, side="left")) + 1  # first 1-based index with a_r >= m
    top = a[r - 1:]
    diffs_top = top[:, None] - top[None, :]
    lhs = float(np.sum(np.triu(np.abs(diffs_top), 1) ** p) + (r - 1) * np.sum((top - m) ** p))
    diffs = a[:, None] - a[None, :]
    var_f = float(np.sum(np.triu(np.abs(diffs), 1) ** p))
    rhs = (1 - 1 / n) ** p * var_f
    g, bt = _complete(n)
    vals = tuple(float(x) for x in f)
    lhs_pipe = p_variation_power(g, maximal_function(g, vals, bt), p)
    var_pipe = p_variation_power(g, vals, p)
    gap = max(abs(lhs - lhs_pipe) / max(1.0, abs(lhs)), abs(var_f - var_pipe) / max(1.0, abs(var_f)))
    return VarCompleteCheck(rhs - lhs, lhs, rhs, r, gap)


def varcomplete_sweep(trials: int = 100_000, seed: int = 0, n_max: int = 8,
                      ps=(0.3, 0.77, 1.0, 2.0)) -> dict:
    rng = np.random.default_rng(seed)
    worst, worst_gap = np.inf, 0.0
    for t in range(trials):
        n = int(rng.integers(3, n_max + 1))
        p = float(ps[t % len(ps)])
        kind = t % 4
        if kind == 0:
            f = rng.random(n)
        elif kind == 1:
            f = np.zeros(n)
            f[rng.choice(n, int(rng.integers(1, n)), replace=False)] = rng.random(1)[0]
        elif kind == 2:
            f = rng.exponential(size=n) ** 3
        else:
            f = rng.integers(0, 4, n).astype(float)
        chk = check_varcomplete(n, p, f)
        worst = min(worst, chk.margin)
        worst_gap = max(worst_gap, chk.pipeline_gap)
    return {"trials": trials, "min_margin": float(worst), "max_pipeline_gap": float(worst_gap),
            "ok": worst >= -TOL and worst_gap <= TOL}


# --------------------------------------------------------------------------
# the auxiliary function phi and the two lemmas


def _check_np(n, p):
    if not 0 < p < 1:
        raise DomainError("need 0 < p < 1")
    if n < 2:
        raise DomainError("need n >= 2")


def phi(n: int, p: float, x):
    _check_np(n, p)
    if n < 3:
        raise DomainError("phi needs n >= 3")
    x = np.asarray(x, dtype=float)
    if (x < 2 - 1e-12).any() or (x > n - 1 + 1e-12).any():
        raise DomainError("phi is defined on [2, n-1]")
    q = 1 / (1 - p)
    c = (n / (n - 1)) ** p
    return (c - 1) ** q * (n - x) + (c * (x - 1) - x + 2) ** q * (n - x + 2) ** (-p * q)


def phi_endpoints(n: int, p: float) -> tuple[float, float]:
    """Closed forms of phi(2) and phi(n-1)."""
    q = 1 / (1 - p)
    d = n ** p - (n - 1) ** p
    at2 = ((n - 2) * d ** q + 1) / (n - 1) ** (p * q)
    atn1 = (d ** q + 3 ** (-p * q) * ((n - 2) * n ** p - (n - 3) * (n - 1) ** p) ** q) / (n - 1) ** (p * q)
    return at2, atn1


def phi_report(n: int, p: float, points: int = 101) -> dict:
    xs = np.linspace(2, n - 1, points) if n > 3 else np.array([2.0])
    vals = phi(n, p, xs)
    second = vals[2:] - 2 * vals[1:-1] + vals[:-2] if len(vals) > 2 else np.array([0.0])
    at2, atn1 = phi_endpoints(n, p)
    return {
        "bound_margin": float(1 - vals.max()),
        "min_second_difference": float(second.min()),
        "endpoint_gap": float(abs(vals.max() - max(at2, atn1))) if n > 3 else float(abs(vals[0] - at2)),
        "closed_form_gap": float(max(abs(vals[0] - at2), abs(vals[-1] - atn1))) if n > 3 else float(abs(vals[0] - at2)),
    }


def F(p: float, x):
    q = 1 / (1 - p)
    x = np.asarray(x, dtype=float)
    return (x - 1) ** q - p ** q * (x - 2) - x + 1


def G(p: float, x):
    q = 1 / (1 - p)
    x = np.asarray(x, dtype=float)
    return (x - 1) ** q - ((p * x + x - 2 * p - 1) / 3 ** p) ** q - p ** q


def check_lemma1(n: int, p: float) -> float:
    _check_np(n, p)
    q = 1 / (1 - p)
    return (n - 1) ** (p * q) - ((n - 2) * (n ** p - (n - 1) ** p) ** q + 1)


def check_lemma2(n: int, p: float) -> float:
    _check_np(n, p)
    q = 1 / (1 - p)
    lhs = (n ** p - (n - 1) ** p) ** q + 3 ** (-p * q) * ((n - 2) * n ** p - (n - 3) * (n - 1) ** p) ** q
    return (n - 1) ** (p * q) - lhs


def holder_margin(n: int, r: int, p: float) -> float:
    """1 - (s^(1/(1-p)) + t^(1/(1-p))) for the substitution constants s, t."""
    q = 1 / (1 - p)
    c = (n / (n - 1)) ** p
    s = (c - 1) * (n - r) ** (1 - p)
    t = (c * (r - 1) - r + 2) * (n - r + 2) ** (-p)
    return 1 - (s ** q + t ** q)


def lemma_grid(n_max: int = 50, ps=P_GRID) -> dict:
    m1 = min(check_lemma1(n, float(p)) for n in range(2, n_max + 1) for p in ps)
    m2 = min(check_lemma2(n, float(p)) for n in range(2, n_max + 1) for p in ps)
    f2 = max(abs(float(F(float(p), 2.0))) for p in ps)
    g2 = min(float(G(float(p), 2.0)) for p in ps)
    # monotonicity spot-check on increasing grids
    xs = np.linspace(2, 60, 400)
    mono = all((np.diff(F(float(p), xs)) > -TOL).all() and (np.diff(G(float(p), xs)) > -TOL).all() for p in ps)
    return {"lemma1_min_margin": m1, "lemma2_min_margin": m2, "max_abs_F_at_2": f2,
            "min_G_at_2": g2, "F_G_increasing": bool(mono),
            "ok": m1 >= -TOL and m2 >= -TOL and f2 <= 1e-12 and g2 > 0 and mono}


def phi_grid(n_max: int = 50, ps=P_GRID) -> dict:
    worst = {"bound_margin": np.inf, "min_second_difference": np.inf, "endpoint_gap": 0.0, "closed_form_gap": 0.0}
    holder = np.inf
    for n in range(3, n_max + 1):
        for p in ps:
            rep = phi_report(n, float(p))
            worst["bound_margin"] = min(worst["bound_margin"], rep["bound_margin"])
            worst["min_second_difference"] = min(worst["min_second_difference"], rep["min_second_difference"])
            worst["endpoint_gap"] = max(worst["endpoint_gap"], rep["endpoint_gap"])
            worst["closed_form_gap"] = max(worst["closed_form_gap"], rep["closed_form_gap"])
            for r in range(2, n):
                holder = min(holder, holder_margin(n, r, float(p)))
    worst = {k: float(v) for k, v in worst.items()}
    worst["holder_min_margin"] = float(holder)
    worst["ok"] = (worst["bound_margin"] >= -TOL and worst["min_second_difference"] >= -TOL
                   and worst["endpoint_gap"] <= 1e-9 and holder >= -TOL)
    return worst


def verify_all(sweep_size: int = 1_000_000, varcomplete_trials: int = 100_000, seed: int = 0) -> dict:
    out = {
        "proposition": proposition_sweep(sweep_size, seed),
        "varcomplete": varcomplete_sweep(varcomplete_trials, seed),
        "lemmas": lemma_grid(),
        "phi": phi_grid(),
    }
    out["ok"] = all(v["ok"] for v in out.values())
    return out


def check_phi_bound(n: int, p: float, points: int = 101) -> float:
    """1 - max phi on a uniform grid of [2, n-1]."""
    return phi_report(n, p, points)["bound_margin"]


def check_phi_convexity(n: int, p: float, points: int = 101) -> float:
    """Smallest second difference of phi on a uniform grid; >= 0 up to rounding if convex."""
    return phi_report(n, p, points)["min_second_difference"]
