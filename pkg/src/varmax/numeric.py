"""Numerical lower bounds for C_{G,p} and a brute-force grid oracle."""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .graphs import Graph, GraphError, balls, emit_graph6
from .maximal import variation_ratio
from .sharp import ConstantCertificate


@dataclass
class SearchConfig:
    restarts: int = 40
    seed: int = 0
    max_iters: int = 3_000
    step0: float = 0.25
    tol: float = 1e-9
    random_polls: int = 0  # extra random directions per poll; 0 means 2n


class _Objective:
    """Vectorised Var_p(M f) / Var_p(f) for f >= 0."""

    def __init__(self, g: Graph, p: float):
        bt = balls(g)
        rows, starts = [], []
        for v in range(g.n):
            starts.append(len(rows))
            for ball in bt.members[v]:
                row = np.zeros(g.n)
                row[list(ball)] = 1.0 / len(ball)
                rows.append(row)
        self.W = np.array(rows)
        self.starts = np.array(starts)
        e = np.array(g.edges, dtype=int).reshape(-1, 2)
        self.eu, self.ev = e[:, 0], e[:, 1]
        self.p = float(p)

    def __call__(self, f: np.ndarray) -> float:
        den = np.sum(np.abs(f[self.eu] - f[self.ev]) ** self.p)
        if den <= 0:
            return -np.inf
        m = np.maximum.reduceat(self.W @ f, self.starts)
        num = np.sum(np.abs(m[self.eu] - m[self.ev]) ** self.p)
        return float((num / den) ** (1.0 / self.p))


def _normalise(f: np.ndarray) -> np.ndarray:
    f = f - f.min()
    top = f.max()
    return f / top if top > 0 else f


def _pattern_search(obj, f0: np.ndarray, rng: np.random.Generator, cfg: SearchConfig):
    n = len(f0)
    f = _normalise(f0)
    best = obj(f)
    step = cfg.step0
    npoll = cfg.random_polls or 2 * n
    it = 0
    while step >= cfg.tol and it < cfg.max_iters:
        it += 1
        dirs = [np.eye(n)[i] * s for i in range(n) for s in (1.0, -1.0)]
        dirs += list(rng.standard_normal((npoll, n)))
        improved = False
        for d in dirs:
            trial = np.maximum(f + step * d / max(np.abs(d).max(), 1e-300), 0.0)
            val = obj(trial)
            if val > best + 1e-13 * max(1.0, abs(best)):
                f, best, improved = _normalise(trial), val, True
                break
        step = min(2.0 * step, cfg.step0) if improved else 0.5 * step
    return best, f


def _starts(n: int, cfg: SearchConfig):
    for v in range(n):
        e = np.zeros(n)
        e[v] = 1.0
        yield e, np.random.default_rng([cfg.seed, 0, v])
    for i in range(cfg.restarts):
        rng = np.random.default_rng([cfg.seed, 1, i])
        kind = i % 3
        if kind == 0:
            f = rng.random(n)
        elif kind == 1:
            f = np.zeros(n)
            k = rng.integers(1, n + 1)
            f[rng.choice(n, size=k, replace=False)] = rng.random(k)
        else:
            f = rng.exponential(size=n) ** 2
        if np.ptp(f) == 0:
            f[0] += 1.0
        yield f, rng


def recognise_fraction(x: float, max_den: int = 120, tol: float = 1e-9) -> str:
    fr = Fraction(x).limit_denominator(max_den)
    return f"{fr.numerator}/{fr.denominator}" if abs(float(fr) - x) <= tol else ""


def numeric_lower_bound(g: Graph, p, cfg: SearchConfig | None = None) -> ConstantCertificate:
    """Best ratio found by multi-start pattern search; always a valid lower bound."""
    if not g.is_connected():
        raise GraphError("sharp constants need a connected graph")
    if float(p) <= 0:
        raise ValueError("p must be positive")
    cfg = cfg or SearchConfig()
    t0 = time.monotonic()
    obj = _Objective(g, p)
    best_val, best_f = -np.inf, None
    nstarts = 0
    for f0, rng in _starts(g.n, cfg):
        nstarts += 1
        val, f = _pattern_search(obj, f0, rng, cfg)
        if val > best_val:
            best_val, best_f = val, f
    witness = tuple(float(x) for x in best_f)
    # report the value the witness actually attains under the reference evaluator
    value = float(variation_ratio(g, witness, float(p)))
    stats = {"starts": nstarts, "wall_time": time.monotonic() - t0}
    return ConstantCertificate(emit_graph6(g), g.n, len(g.edges), p, value, witness,
                               "numeric-lower-bound", stats, recognise_fraction(value))


def grid_oracle(g: Graph, p, levels: int):
    """Max of the variation ratio over all f with values in {0, 1/levels, ..., 1}.

    Exact (Fraction) when p == 1. Returns (value, witness).
    """
    if levels < 1:
        raise ValueError("levels must be >= 1")
    bt = balls(g)
    exact = p == 1
    best, arg = None, None
    for vals in itertools.product(range(levels + 1), repeat=g.n):
        if min(vals) == max(vals):
            continue
        f = vals if exact else tuple(float(x) for x in vals)
        r = variation_ratio(g, f, 1 if exact else float(p), bt)
        if best is None or r > best:
            best, arg = r, vals
    witness = tuple(Fraction(x, levels) for x in arg)
    return best, witness
