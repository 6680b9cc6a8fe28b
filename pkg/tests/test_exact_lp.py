import json
from fractions import Fraction as Fr
from pathlib import Path

import pytest
from hypothesis import given, settings, strategies as st

from varmax import cli
from varmax.exact_lp import (
    EQ, GE, LE, BudgetExceeded, Constraint, LinearProgram, LPError, OrthantCone, Polytope,
    UnboundedPolyhedron, dual_certificate, dumps_lp, enumerate_vertices, feasible, loads_lp,
    matrix_rank, orthant_polytope_vertices, solve_lp, solve_square,
)

DATA = Path(__file__).parent / "data"
C4_FILES = sorted(DATA.glob("c4_sub*.lp"))


def _expected(path):
    return Fr(path.read_text().splitlines()[0].split()[-1])


def test_fixture_set_complete():
    assert len(C4_FILES) == 9


@pytest.mark.parametrize("path", C4_FILES, ids=lambda p: p.stem)
def test_c4_subproblems(path):
    lp = loads_lp(path.read_text())
    res = solve_lp(lp)
    assert res.status == "optimal"
    assert res.value == _expected(path)
    assert all(c.satisfied(res.witness) for c in lp.constraints)
    y = dual_certificate(lp, res)
    assert sum(c.rhs * yi for c, yi in zip(lp.constraints, y)) == res.value


@pytest.mark.parametrize("path", C4_FILES[:3], ids=lambda p: p.stem)
def test_c4_subproblems_via_cli(path, capsys):
    assert cli.run(["lp", str(path)]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["status"] == "optimal"
    assert Fr(out["value"]) == _expected(path)


def test_subproblem_two_vertex_attains_three_quarters():
    lp = loads_lp((DATA / "c4_sub2.lp").read_text())
    with pytest.raises(UnboundedPolyhedron):
        enumerate_vertices(Polytope(lp.nvars, lp.constraints))
    # the region is invariant under adding constants; pin the smallest value
    pinned = lp.constraints + (Constraint([0, 0, 0, 1], EQ, 0),)
    verts = enumerate_vertices(Polytope(lp.nvars, pinned))
    assert max(lp.value(v) for v in verts) == Fr(3, 4)
    assert verts == orthant_polytope_vertices(lp.nvars, pinned[4:])


def test_infeasible_and_unbounded():
    lp = LinearProgram(1, [1], [Constraint([1], GE, 2), Constraint([1], LE, 1)])
    assert solve_lp(lp).status == "infeasible"
    lp = LinearProgram(2, [1, 1], [Constraint([1, -1], LE, 0)])
    assert solve_lp(lp).status == "unbounded"
    assert feasible(1, [Constraint([1], EQ, Fr(1, 3))]).witness == (Fr(1, 3),)


def test_free_variables_and_min_sense():
    # no sign constraint on x: min x subject to x >= -5/2
    lp = LinearProgram(1, [1], [Constraint([1], GE, Fr(-5, 2))], sense="min")
    res = solve_lp(lp)
    assert res.value == Fr(-5, 2)
    dual_certificate(lp, res)


def test_vertex_examples():
    square = Polytope(2, [([1, 0], GE, 0), ([0, 1], GE, 0), ([1, 0], LE, 1), ([0, 1], LE, 1)])
    assert enumerate_vertices(square) == [(0, 0), (0, 1), (1, 0), (1, 1)]
    simplex = Polytope(3, [([1, 0, 0], GE, 0), ([0, 1, 0], GE, 0), ([0, 0, 1], GE, 0),
                           ([1, 1, 1], EQ, 1)])
    assert len(enumerate_vertices(simplex)) == 3
    empty = Polytope(1, [([1], GE, 1), ([1], LE, 0)])
    assert enumerate_vertices(empty) == []
    with pytest.raises(UnboundedPolyhedron):
        enumerate_vertices(Polytope(1, [([1], GE, 0)]))
    cube = Polytope(6, [(row, op, b) for j in range(6) for row, op, b in
                        [([int(i == j) for i in range(6)], GE, 0), ([int(i == j) for i in range(6)], LE, 1)]])
    with pytest.raises(BudgetExceeded):
        enumerate_vertices(cube, budget=100)


def test_linear_algebra_helpers():
    assert solve_square([[2, 0], [0, 4]], [1, 1]) == (Fr(1, 2), Fr(1, 4))
    assert solve_square([[1, 1], [2, 2]], [1, 2]) is None
    assert matrix_rank([[1, 2], [2, 4], [0, 1]]) == 2


def test_orthant_cone_full_dimension_check():
    cone = OrthantCone(2)
    assert cone.add([1, -1]) is not None
    # x0 - x1 >= 0 and x1 - x0 >= 0 collapse the quadrant to a ray
    assert cone.add([1, -1]).add([-1, 1], require_full_dim=True) is None
    assert len(cone.add([1, -1]).rays) == 2


def test_dump_round_trip_and_errors():
    lp = LinearProgram(2, [Fr(1, 2), -3], [Constraint([1, Fr(2, 3)], LE, 4), Constraint([0, 1], EQ, 0)], "min")
    assert loads_lp(dumps_lp(lp)) == lp
    assert loads_lp("# c\nmax 1 # trailing\n1 <= 2\n").objective == (1,)
    for bad in ["", "max 1\n1 2", "max 1\n1 != 2", "maybe 1\n1 <= 1"]:
        with pytest.raises(LPError):
            loads_lp(bad)


@st.composite
def bounded_systems(draw, max_vars=3, max_rows=4):
    """{x >= 0, x_j <= u_j} intersected with a few random rows."""
    d = draw(st.integers(1, max_vars))
    coef = st.integers(-3, 3)
    cons = [Constraint([int(i == j) for i in range(d)], LE, draw(st.integers(1, 4))) for j in range(d)]
    for _ in range(draw(st.integers(0, max_rows))):
        row = draw(st.lists(coef, min_size=d, max_size=d))
        cons.append(Constraint(row, draw(st.sampled_from([LE, GE])), draw(st.integers(-2, 4))))
    obj = draw(st.lists(coef, min_size=d, max_size=d))
    return d, cons, obj


@settings(max_examples=120, deadline=None)
@given(bounded_systems())
def test_vertices_agree_with_simplex_and_dd(sys_):
    d, cons, obj = sys_
    with_sign = cons + [Constraint([int(i == j) for i in range(d)], GE, 0) for j in range(d)]
    lp = LinearProgram(d, obj, with_sign)
    res = solve_lp(lp)
    verts = enumerate_vertices(Polytope(d, with_sign))
    assert verts == orthant_polytope_vertices(d, cons)
    if not verts:
        assert res.status == "infeasible"
        return
    assert res.status == "optimal"
    assert res.value == max(lp.value(v) for v in verts)
    y = dual_certificate(lp, res)
    assert sum(c.rhs * yi for c, yi in zip(lp.constraints, y)) == res.value


def test_solver_is_deterministic():
    lp = loads_lp((DATA / "c4_sub5.lp").read_text())
    a, b = solve_lp(lp), solve_lp(lp)
    assert a == b
