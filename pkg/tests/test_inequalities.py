import numpy as np
import pytest
from hypothesis import assume, given, settings, strategies as st

from varmax import inequalities as ineq


def test_proposition_example():
    # n=3, r=2: x has one entry, y has one; x + 3u = y
    inst = ineq.PropositionInstance(3, 2, 0.5, 0.25, (1.0,), (1.75,))
    assert ineq.check_proposition(inst) >= 0


@pytest.mark.parametrize("kwargs", [
    dict(n=3, r=3, p=0.5, u=0.0, x=(), y=(0.0, 0.0)),
    dict(n=3, r=2, p=1.0, u=0.0, x=(1.0,), y=(1.0,)),
    dict(n=3, r=2, p=0.5, u=0.0, x=(1.0, 1.0), y=(1.0,)),
    dict(n=3, r=2, p=0.5, u=0.5, x=(1.0,), y=(0.1,)),
    dict(n=3, r=2, p=0.5, u=0.0, x=(1.0,), y=(2.0,)),
])
def test_proposition_domain_errors(kwargs):
    with pytest.raises(ineq.DomainError):
        ineq.check_proposition(ineq.PropositionInstance(**kwargs))


@st.composite
def proposition_instances(draw):
    n = draw(st.integers(3, 10))
    r = draw(st.integers(2, n - 1))
    p = draw(st.floats(0.01, 0.99))
    u = draw(st.floats(0, 5))
    x = draw(st.lists(st.floats(0, 5), min_size=n - r, max_size=n - r))
    w = draw(st.lists(st.floats(0, 1), min_size=r - 1, max_size=r - 1))
    total = sum(w)
    w = [1 / (r - 1)] * (r - 1) if total == 0 else [wi / total for wi in w]
    slack = sum(x) + (n - r + 1) * u
    y = tuple(u + slack * wi for wi in w)
    # fix rounding so the side condition holds to machine precision
    y = y[:-1] + (sum(x) + n * u - sum(y[:-1]),)
    assume(y[-1] >= u)
    return ineq.PropositionInstance(n, r, p, u, tuple(x), y)


@settings(max_examples=300, deadline=None)
@given(proposition_instances())
def test_proposition_holds(inst):
    assert ineq.check_proposition(inst) >= -1e-9


def test_proposition_batch_agrees_with_scalar_checker():
    rng = np.random.default_rng(5)
    margins = ineq._proposition_batch(6, 3, 200, rng)
    assert margins.shape == (200,)
    assert margins.min() >= -ineq.TOL


def test_proposition_sweep_small():
    rep = ineq.proposition_sweep(20_000, seed=1)
    assert rep["ok"] and rep["instances"] == 20_000
    assert ineq.proposition_sweep(5000, seed=2) == ineq.proposition_sweep(5000, seed=2)


def test_varcomplete_examples():
    chk = ineq.check_varcomplete(3, 1.0, [1, 0, 0])
    assert chk.margin == pytest.approx(0.0, abs=1e-12)
    assert chk.r == 3
    chk = ineq.check_varcomplete(4, 0.5, [3, 1, 0, 2])
    assert chk.margin >= 0 and chk.pipeline_gap <= 1e-12
    with pytest.raises(ineq.DomainError):
        ineq.check_varcomplete(3, 1.0, [1, -1, 0])
    with pytest.raises(ineq.DomainError):
        ineq.check_varcomplete(3, 1.0, [1, 0])


@settings(max_examples=150, deadline=None)
@given(st.integers(2, 8).flatmap(lambda n: st.tuples(
    st.just(n), st.floats(0.05, 3.0), st.lists(st.floats(0, 10), min_size=n, max_size=n))))
def test_varcomplete_property(args):
    n, p, f = args
    chk = ineq.check_varcomplete(n, p, f)
    assert chk.margin >= -1e-9 * max(1.0, chk.rhs)
    assert chk.pipeline_gap <= 1e-10


def test_varcomplete_sweep_small():
    rep = ineq.varcomplete_sweep(2000, seed=0)
    assert rep["ok"]


def test_phi_examples_and_domain():
    at2, atn1 = ineq.phi_endpoints(6, 0.4)
    assert float(ineq.phi(6, 0.4, 2.0)) == pytest.approx(at2, rel=1e-12)
    assert float(ineq.phi(6, 0.4, 5.0)) == pytest.approx(atn1, rel=1e-12)
    for bad in [(2, 0.5, 2.0), (6, 1.0, 3.0), (6, 0.5, 1.5), (6, 0.5, 5.5)]:
        with pytest.raises(ineq.DomainError):
            ineq.phi(*bad)


@settings(max_examples=100, deadline=None)
@given(st.integers(3, 60), st.floats(0.01, 0.99))
def test_phi_at_most_one_and_convex(n, p):
    rep = ineq.phi_report(n, p, points=41)
    assert rep["bound_margin"] >= -1e-10
    assert rep["min_second_difference"] >= -1e-10
    assert rep["endpoint_gap"] <= 1e-9


@settings(max_examples=100, deadline=None)
@given(st.integers(2, 200), st.floats(0.01, 0.99))
def test_lemmas(n, p):
    assert ineq.check_lemma1(n, p) >= -1e-10
    assert ineq.check_lemma2(n, p) >= -1e-10 * (n - 1) ** (p / (1 - p))


@settings(max_examples=100, deadline=None)
@given(st.floats(0.01, 0.99), st.floats(2.0, 40.0), st.floats(0.0, 5.0))
def test_F_G_properties(p, x, dx):
    assert abs(float(ineq.F(p, 2.0))) <= 1e-12
    assert float(ineq.G(p, 2.0)) > 0
    assert float(ineq.F(p, x + dx)) >= float(ineq.F(p, x)) - 1e-9
    assert float(ineq.G(p, x + dx)) >= float(ineq.G(p, x)) - 1e-9


def test_holder_margin_nonnegative():
    assert min(ineq.holder_margin(n, r, p) for n in range(3, 25) for r in range(2, n)
               for p in (0.05, 0.5, 0.95)) >= -ineq.TOL


def test_grids_ok():
    assert ineq.lemma_grid(n_max=20)["ok"]
    assert ineq.phi_grid(n_max=12)["ok"]


def test_phi_check_wrappers():
    assert ineq.check_phi_bound(10, 0.3) >= 0
    assert ineq.check_phi_convexity(10, 0.3) >= -1e-12
