"""Centered Hardy-Littlewood maximal function on a graph and p-variations.

Values are either exact (``int``/``Fraction``) or ``float``; exact inputs give
exact outputs whenever no root has to be taken.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Sequence

from .graphs import BallTable, Graph, balls

Number = Fraction | float


@dataclass(frozen=True)
class MaximalProfile:
    mvalues: tuple
    argmax_radius: tuple[int, ...]

    def to_json(self) -> str:
        return json.dumps({"mvalues": [format_number(x) for x in self.mvalues],
                           "argmax_radius": list(self.argmax_radius)})


def is_exact(values: Sequence) -> bool:
    return all(isinstance(x, Rational) for x in values)


def parse_vertex_function(text: str) -> tuple:
    """``"1/2,0,0,0"`` -> Fractions; any decimal point or exponent -> floats."""
    parts = [p.strip() for p in text.split(",") if p.strip()]
    if any(("." in p or "e" in p.lower()) for p in parts):
        return tuple(float(p) for p in parts)
    return tuple(Fraction(p) for p in parts)


def format_number(x) -> str:
    if isinstance(x, Rational):
        x = Fraction(x)
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    return f"{x:.12g}"


def maximal_function(g: Graph, f: Sequence, bt: BallTable | None = None) -> MaximalProfile:
    if len(f) != g.n:
        raise ValueError(f"function has {len(f)} values, graph has {g.n} vertices")
    bt = bt or balls(g)
    exact = is_exact(f)
    absf = [abs(Fraction(x)) if exact else abs(float(x)) for x in f]
    mvals, radii = [], []
    for v in range(g.n):
        best, best_r = None, 0
        for r, ball in enumerate(bt.members[v]):
            avg = sum(absf[w] for w in ball) / len(ball)
            # strict comparison keeps the smallest maximizing radius
            if best is None or avg > best:
                best, best_r = avg, r
        mvals.append(best)
        radii.append(best_r)
    return MaximalProfile(tuple(mvals), tuple(radii))


def _values(x) -> Sequence:
    return x.mvalues if isinstance(x, MaximalProfile) else x


def p_variation_power(g: Graph, f, p) -> Number:
    """Sum over edges of |f(u)-f(v)|^p; exact for rational f and positive integer p."""
    if p <= 0:
        raise ValueError("p must be positive")
    vals = _values(f)
    exact = is_exact(vals) and _is_positive_int(p)
    if exact:
        k = int(p)
        return sum((abs(Fraction(vals[u]) - Fraction(vals[v])) ** k for u, v in g.edges), Fraction(0))
    pf = float(p)
    return math.fsum(abs(float(vals[u]) - float(vals[v])) ** pf for u, v in g.edges)


def p_variation(g: Graph, f, p=1) -> Number:
    """(sum over edges |f(u)-f(v)|^p)^(1/p); exact rational when p == 1 and f is rational."""
    s = p_variation_power(g, f, p)
    if _is_one(p) and isinstance(s, Fraction):
        return s
    return float(s) ** (1.0 / float(p))


def variation_ratio(g: Graph, f: Sequence, p=1, bt: BallTable | None = None) -> Number:
    """Var_p(M f) / Var_p(f)."""
    den = p_variation(g, f, p)
    if den == 0:
        raise ValueError("variation ratio undefined for constant f")
    num = p_variation(g, maximal_function(g, f, bt), p)
    if isinstance(num, Fraction) and isinstance(den, Fraction):
        return num / den
    return float(num) / float(den)


def _is_positive_int(p) -> bool:
    if isinstance(p, Rational):
        return Fraction(p).denominator == 1 and p > 0
    return float(p).is_integer() and p > 0


def _is_one(p) -> bool:
    return p == 1
