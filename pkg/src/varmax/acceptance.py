"""One-shot reproduction of every quantitative claim, with pass/fail per criterion."""

from __future__ import annotations

import math
import time
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction as Fr

from . import constructions as cons
from . import inequalities as ineq
from .graphs import distances, enumerate_connected, named_graph
from .maximal import variation_ratio
from .numeric import SearchConfig, grid_oracle, numeric_lower_bound
from .sharp import exact_constant_p1

EXPECTED_5_VERTEX = Counter({Fr(4, 5): 10, Fr(17, 20): 5, Fr(33, 40): 4, Fr(49, 60): 1, Fr(5, 6): 1})
KNOWN_WITNESSES = {
    "C4": (Fr(1, 2), 0, 0, 0),
    "P4": (1, 0, 0, 0),
    "paw": (0, 1, 0, 0),
    "diamond": (0, Fr(1, 3), 0, 0),
}


@dataclass
class Outcome:
    name: str
    passed: bool
    detail: str
    seconds: float
    flagged: bool = False

    def line(self) -> str:
        tag = "PASS" if self.passed else "FAIL"
        flag = " [flagged]" if self.flagged else ""
        return f"{tag} {self.name}{flag} ({self.seconds:.2f}s): {self.detail}"


def _timed(fn):
    t0 = time.monotonic()
    passed, detail, *rest = fn()
    return passed, detail, time.monotonic() - t0, bool(rest and rest[0])


def _revalidates(g, cert) -> bool:
    return variation_ratio(g, cert.extremizer, 1) == cert.value


def a1():
    graphs = enumerate_connected(3)
    certs = [exact_constant_p1(g) for g in graphs]
    return all(c.value == Fr(2, 3) and c.mode == "exact" for c in certs), [str(c.value) for c in certs]


def a2():
    out = []
    for g in enumerate_connected(4):
        c = exact_constant_p1(g)
        out.append((c.value, _revalidates(g, c)))
    return all(v == Fr(3, 4) and ok for v, ok in out), [f"{v}:{ok}" for v, ok in out]


def a3():
    details = []
    ok = True
    for name, w in KNOWN_WITNESSES.items():
        g = named_graph(name) if name in ("paw", "diamond") else named_graph(name[0], int(name[1:]))
        c = exact_constant_p1(g)
        r = variation_ratio(g, tuple(Fr(x) for x in w), 1)
        ok &= c.value == Fr(3, 4) and r == Fr(3, 4) and _revalidates(g, c)
        details.append(f"{name}: cert={c.value} reference-witness={r}")
    return ok, "; ".join(details)


def a4(skip_slow: bool = False):
    graphs = enumerate_connected(5)
    if skip_slow:
        vals = Counter(Fr(numeric_lower_bound(g, 1, SearchConfig(restarts=10)).value_as_fraction or "0")
                       for g in graphs)
        return vals == EXPECTED_5_VERTEX, f"numeric mode: {dict(vals)}", True
    vals = Counter()
    for g in graphs:
        c = exact_constant_p1(g)
        if c.mode != "exact" or not _revalidates(g, c):
            return False, f"certificate failed for {c.graph}"
        vals[c.value] += 1
    if vals != EXPECTED_5_VERTEX:
        return False, f"DISCREPANCY with expected list: got {dict(vals)}"
    return True, {str(k): v for k, v in sorted(vals.items())}


def a5():
    worst = 0.0
    for n in (3, 4, 5, 6):
        for p in (0.3, 0.5, 0.77, 1, 2):
            c = numeric_lower_bound(named_graph("K", n), p)
            worst = max(worst, abs(c.value - (1 - 1 / n)))
    return worst <= 1e-6, f"max |value - (1-1/n)| = {worst:.3g}"


def a6():
    worst = 0.0
    for n in (3, 4, 5):
        c = numeric_lower_bound(named_graph("S", n), 2)
        target = math.sqrt(n * n - n - 1) / n
        worst = max(worst, abs(c.value - target))
    p = 2.0
    s3 = (2 ** (p / (p - 1)) + 1) ** ((p - 1) / p) / 3
    c3 = numeric_lower_bound(named_graph("S", 3), p)
    worst = max(worst, abs(c3.value - s3))
    return worst <= 1e-4, f"max deviation from closed forms = {worst:.3g}"


def a7(p7_budget: float = 600.0):
    details = []
    ok = True
    for n in range(3, 7):
        c = exact_constant_p1(named_graph("P", n))
        ok &= c.value == Fr(n - 1, n) and c.mode == "exact"
        details.append(f"P{n}={c.value}")
    c7 = exact_constant_p1(named_graph("P", 7), time_budget=p7_budget)
    details.append(f"P7={c7.value} ({c7.mode})")
    ok &= c7.value == Fr(6, 7)
    for n in range(3, 11):
        v = numeric_lower_bound(named_graph("P", n), 1).value
        ok &= (1 - 1 / n - 1e-6) <= v <= (1 - 1 / n + 1e-4)
    return ok, ", ".join(details)


def a8():
    ratios = [cons.construction_ratio(cons.ConstructionSpec(k, 2), 1).ratio for k in range(2, 9)]
    increasing = all(a < b for a, b in zip(ratios, ratios[1:]))
    found = cons.witness_large_constant(1, 1.0)
    levels_ok = cons.level_lengths(3) == [1, 2, 5, 11, 23]
    built = cons.build_tree(cons.ConstructionSpec(3, 2))
    dt = distances(built.graph)
    mk = built.marked
    dist_ok = dt.d[mk["b2"]][mk["v"]] == dt.d[mk["b2"]][mk["a3"]]
    ok = increasing and found.ratio > 1 and levels_ok and dist_ok
    return ok, (f"ratios k=2..8: {[round(float(r), 4) for r in ratios]}; search k={found.spec.k} "
                f"ratio={float(found.ratio):.4f}; levels={levels_ok}; d(b_m,v)=d(b_m,a_m+1): {dist_ok}")


def a9(sweep_size: int = 1_000_000, trials: int = 100_000):
    rep = ineq.verify_all(sweep_size, trials)
    return rep["ok"], {k: v.get("min_margin", v.get("lemma1_min_margin", v.get("bound_margin")))
                       for k, v in rep.items() if isinstance(v, dict)}


def a10():
    ok = True
    checked = 0
    for n in (2, 3, 4):
        for g in enumerate_connected(n):
            c = exact_constant_p1(g)
            gv, _ = grid_oracle(g, 1, 8)
            ok &= gv <= c.value and _revalidates(g, c)
            w = c.extremizer
            top = max(w)
            if all((Fr(x) / top * 8).denominator == 1 for x in w):
                ok &= gv == c.value
            checked += 1
    return ok, f"{checked} graphs"


CRITERIA = [("A1 3-vertex constants", a1), ("A2 4-vertex constants", a2), ("A3 4-vertex extremizers", a3),
            ("A4 5-vertex value multiset", a4), ("A5 complete-graph sandwich", a5),
            ("A6 star closed forms", a6), ("A7 path constants", a7), ("A8 large constants", a8),
            ("A9 inequality sweeps", a9), ("A10 oracle consistency", a10)]


def reproduce_all(skip_slow: bool = False, echo=print) -> list[Outcome]:
    outcomes = []
    for name, fn in CRITERIA:
        call = (lambda: a4(skip_slow)) if fn is a4 else fn
        try:
            passed, detail, secs, flagged = _timed(call)
        except Exception as exc:  # a crash is a failed criterion
            passed, detail, secs, flagged = False, f"error: {exc!r}", 0.0, False
        out = Outcome(name, bool(passed), str(detail), secs, flagged)
        if echo:
            echo(out.line())
        outcomes.append(out)
    return outcomes
