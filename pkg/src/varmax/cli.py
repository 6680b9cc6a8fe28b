"""Command-line entry point.

    varmax constant --graph P5 --p 1 --exact
    varmax survey --n 5 --p 1 --exact --out table.csv
    varmax paths --max-n 10
    varmax construction --k 3 --m 2 --p 1 --emit-graph6 tree.g6
    varmax construction-search --p 1 --target 2
    varmax verify-inequalities --report ineq.json
    varmax enumerate --n 5
    varmax graph6 --graph paw
    varmax maximal --graph P4 --f 1,0,0,0
    varmax lp dump.txt
    varmax reproduce [--skip-slow]

Exit status: 0 success, 1 computational failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from pathlib import Path

from . import constructions as cons
from . import exact_lp
from . import inequalities as ineq
from .graphs import GraphError, emit_graph6, enumerate_connected, parse_graph6, parse_graph_spec
from .maximal import format_number, maximal_function, parse_vertex_function
from .numeric import SearchConfig, numeric_lower_bound
from .reporting import RunRecord, atomic_write, render_csv, write_csv, write_json
from .sharp import exact_constant_p1
from .survey import paths_survey, survey_order


class UsageError(Exception):
    pass


def parse_p(text: str):
    text = str(text).strip()
    try:
        if "." in text or "e" in text.lower():
            p = float(text)
        else:
            p = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"invalid p {text!r}")
    if p <= 0:
        raise argparse.ArgumentTypeError("p must be positive")
    return p


def _threads(args) -> int:
    return args.threads or os.cpu_count() or 1


def _search_cfg(args) -> SearchConfig:
    return SearchConfig(restarts=args.restarts, seed=args.seed)


def _mode(args) -> str:
    if args.exact and args.numeric:
        raise UsageError("--exact and --numeric are mutually exclusive")
    if args.exact:
        return "exact"
    if args.numeric:
        return "numeric"
    return "exact" if args.p == 1 else "numeric"


def cmd_constant(args) -> int:
    g = parse_graph_spec(args.graph)
    mode = _mode(args)
    rec = RunRecord.start("constant", seed=args.seed)
    if mode == "exact":
        if args.p != 1:
            raise UsageError("--exact requires --p 1")
        cert = exact_constant_p1(g, threads=_threads(args), time_budget=args.time_budget)
    else:
        cert = numeric_lower_bound(g, args.p, _search_cfg(args))
    print(f"{args.graph}: C = {format_number(cert.value)} ({cert.mode})"
          + (f" ~ {cert.value_as_fraction}" if mode == "numeric" and cert.value_as_fraction else ""))
    print("extremizer:", ", ".join(format_number(x) for x in cert.extremizer))
    if args.json:
        write_json(args.json, {"certificate": cert.to_dict()}, rec)
    return 0


def _emit_table(args, res, command):
    rec = RunRecord.start(command, seed=getattr(args, "seed", None))
    for c in res.certificates:
        print(f"{c.graph:>10}  {format_number(c.value):>14}  {c.value_as_fraction:>8}  {c.mode}")
    for g6, err in res.errors.items():
        print(f"{g6:>10}  ERROR {err.splitlines()[0]}", file=sys.stderr)
    if args.out:
        write_csv(args.out, res.rows(), rec)
    if args.json:
        payload = {"certificates": [c.to_dict() for c in res.certificates], "errors": res.errors}
        write_json(args.json, payload, rec)
    return 1 if res.errors else 0


def cmd_survey(args) -> int:
    mode = _mode(args)
    res = survey_order(args.n, args.p, mode, cfg=_search_cfg(args), threads=_threads(args),
                       time_budget=args.time_budget)
    mult = res.multiset()
    print("values:", ", ".join(f"{format_number(v)} x{k}" for v, k in sorted(mult.items())))
    return _emit_table(args, res, "survey")


def cmd_paths(args) -> int:
    mode = "exact" if args.exact else "numeric"
    res = paths_survey(args.max_n, args.min_n, mode, cfg=_search_cfg(args), threads=_threads(args),
                       time_budget=args.time_budget)
    return _emit_table(args, res, "paths")


def cmd_construction(args) -> int:
    spec = cons.ConstructionSpec(args.k, args.m)
    if spec.m <= float(args.p):
        print(f"note: m={spec.m} <= p={args.p}; the growth argument needs m > p", file=sys.stderr)
    rep = cons.construction_ratio(spec, args.p)
    print(json.dumps(rep.summary(), indent=2))
    if args.emit_graph6:
        tree = cons.build_tree(spec)
        atomic_write(args.emit_graph6, emit_graph6(tree.graph) + "\n")
    return 0


def cmd_construction_search(args) -> int:
    rep = cons.witness_large_constant(args.p, args.target)
    print(json.dumps(rep.summary(), indent=2))
    return 0


def cmd_verify(args) -> int:
    rec = RunRecord.start("verify-inequalities", seed=args.seed)
    rep = ineq.verify_all(args.sweep_size, args.trials, args.seed)
    print(json.dumps(rep, indent=2, default=str))
    if args.report:
        write_json(args.report, {"report": rep}, rec)
    return 0 if rep["ok"] else 1


def cmd_enumerate(args) -> int:
    text = "".join(emit_graph6(g) + "\n" for g in enumerate_connected(args.n))
    if args.out:
        atomic_write(args.out, text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_graph6(args) -> int:
    if args.decode:
        g = parse_graph6(args.decode)
        print(json.dumps({"n": g.n, "edges": [list(e) for e in g.edges]}))
    else:
        print(emit_graph6(parse_graph_spec(args.graph)))
    return 0


def cmd_maximal(args) -> int:
    g = parse_graph_spec(args.graph)
    print(maximal_function(g, parse_vertex_function(args.f)).to_json())
    return 0


def cmd_lp(args) -> int:
    lp = exact_lp.loads_lp(Path(args.file).read_text())
    res = exact_lp.solve_lp(lp)
    out = {"status": res.status}
    if res.status == "optimal":
        out["value"] = format_number(res.value)
        out["witness"] = [format_number(x) for x in res.witness]
    print(json.dumps(out))
    return 0


def cmd_reproduce(args) -> int:
    from .acceptance import reproduce_all

    rec = RunRecord.start("reproduce")
    outcomes = reproduce_all(skip_slow=args.skip_slow)
    if args.report:
        write_json(args.report, {"criteria": [o.__dict__ for o in outcomes]}, rec)
    return 0 if all(o.passed for o in outcomes) else 1


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="varmax", description=__doc__.split("\n\n")[0])
    ap.add_argument("--config", help="JSON file with default values for flags")
    sub = ap.add_subparsers(dest="command", required=True)

    def engine_flags(p, default_p="1"):
        p.add_argument("--p", type=parse_p, default=parse_p(default_p))
        p.add_argument("--exact", action="store_true")
        p.add_argument("--numeric", action="store_true")
        p.add_argument("--restarts", type=int, default=40)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--threads", type=int, default=0, help="worker processes (0 = all cores)")
        p.add_argument("--time-budget", type=float, default=None, help="seconds per exact computation")
        p.add_argument("--json")

    p = sub.add_parser("constant", help="sharp constant of one graph")
    p.add_argument("--graph", required=True)
    engine_flags(p)
    p.set_defaults(func=cmd_constant)

    p = sub.add_parser("survey", help="constants of all connected graphs on n vertices")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--out")
    engine_flags(p)
    p.set_defaults(func=cmd_survey)

    p = sub.add_parser("paths", help="constants of the paths P_min..P_max (p = 1)")
    p.add_argument("--max-n", type=int, default=10)
    p.add_argument("--min-n", type=int, default=3)
    p.add_argument("--out")
    engine_flags(p)
    p.set_defaults(func=cmd_paths)

    p = sub.add_parser("construction", help="root-indicator ratio on the large-constant tree")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--p", type=parse_p, default=Fraction(1))
    p.add_argument("--emit-graph6")
    p.set_defaults(func=cmd_construction)

    p = sub.add_parser("construction-search", help="find a tree whose ratio exceeds a target")
    p.add_argument("--p", type=parse_p, default=Fraction(1))
    p.add_argument("--target", type=float, required=True)
    p.set_defaults(func=cmd_construction_search)

    p = sub.add_parser("verify-inequalities", help="seeded sweeps of the complete-graph inequalities")
    p.add_argument("--sweep-size", type=int, default=1_000_000)
    p.add_argument("--trials", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--report")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("enumerate", help="connected graphs on n vertices as graph6")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("graph6", help="encode a graph spec or decode a graph6 string")
    grp = p.add_mutually_exclusive_group(required=True)
    grp.add_argument("--graph")
    grp.add_argument("--decode")
    p.set_defaults(func=cmd_graph6)

    p = sub.add_parser("maximal", help="maximal function of a vertex function")
    p.add_argument("--graph", required=True)
    p.add_argument("--f", required=True, help='comma-separated values, e.g. "1/2,0,0,0"')
    p.set_defaults(func=cmd_maximal)

    p = sub.add_parser("lp", help="solve an LP dump file exactly")
    p.add_argument("file")
    p.set_defaults(func=cmd_lp)

    p = sub.add_parser("reproduce", help="run every acceptance criterion")
    p.add_argument("--skip-slow", action="store_true")
    p.add_argument("--report")
    p.set_defaults(func=cmd_reproduce)
    return ap


def _apply_config(ap: argparse.ArgumentParser, argv):
    pre, _ = ap.parse_known_args(argv)
    if not pre.config:
        return
    cfg = json.loads(Path(pre.config).read_text())
    cfg = {k.replace("-", "_"): v for k, v in cfg.items()}
    for action in ap._subparsers._group_actions:
        for sp in action.choices.values():
            known = {a.dest for a in sp._actions}
            sp.set_defaults(**{k: (parse_p(v) if k == "p" else v) for k, v in cfg.items() if k in known})


def run(argv=None) -> int:
    ap = build_parser()
    try:
        _apply_config(ap, argv)
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    except (OSError, json.JSONDecodeError) as exc:
        print(f"varmax: bad config: {exc}", file=sys.stderr)
        return 2
    try:
        return args.func(args)
    except (UsageError, GraphError) as exc:
        print(f"varmax: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:
        print(f"varmax: error: {exc}", file=sys.stderr)
        return 1


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
