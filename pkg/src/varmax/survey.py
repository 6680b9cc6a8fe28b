"""Batch computation of constants over graph families."""

from __future__ import annotations

import traceback
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .graphs import Graph, emit_graph6, enumerate_connected, named_graph
from .numeric import SearchConfig, numeric_lower_bound
from .sharp import ConstantCertificate, exact_constant_p1


@dataclass
class SurveyResult:
    certificates: list[ConstantCertificate]
    errors: dict[str, str] = field(default_factory=dict)

    def multiset(self) -> Counter:
        return Counter(c.value for c in self.certificates)

    def rows(self) -> list[dict]:
        return [c.row() for c in self.certificates]


def _one(args):
    g, p, mode, cfg, time_budget = args
    try:
        if mode == "exact":
            if p != 1:
                raise ValueError("exact mode is only available for p = 1")
            return exact_constant_p1(g, time_budget=time_budget), None
        return numeric_lower_bound(g, p, cfg), None
    except Exception as exc:  # collected per graph, never fatal
        return None, f"{type(exc).__name__}: {exc}\n{traceback.format_exc(limit=2)}"


def survey(graphs: list[Graph], p=1, mode: str = "exact", cfg: SearchConfig | None = None,
           threads: int = 1, time_budget: float | None = None) -> SurveyResult:
    jobs = [(g, p, mode, cfg, time_budget) for g in graphs]
    if threads > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=threads) as ex:
            outs = list(ex.map(_one, jobs))
    else:
        outs = [_one(j) for j in jobs]
    res = SurveyResult([])
    for g, (cert, err) in zip(graphs, outs):
        if err is None:
            res.certificates.append(cert)
        else:
            res.errors[emit_graph6(g)] = err
    return res


def survey_order(n: int, p=1, mode: str = "exact", **kw) -> SurveyResult:
    return survey(enumerate_connected(n), p, mode, **kw)


def paths_survey(max_n: int = 10, min_n: int = 3, mode: str = "numeric", **kw) -> SurveyResult:
    return survey([named_graph("P", n) for n in range(min_n, max_n + 1)], 1, mode, **kw)
