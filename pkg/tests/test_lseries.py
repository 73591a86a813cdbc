import math

import mpmath
import pytest
from hypothesis import given, strategies as st

from shaforge.ap_engine import APTable
from shaforge.ec_core import WeierstrassCurve, b_invariants
from shaforge.errors import BudgetExceeded
from shaforge.family import FamilyId, family_curve
from shaforge.localdata import global_data
from shaforge.lseries import (
    agm,
    approximate_L1,
    coefficients_needed,
    max_terms_default,
    real_period,
    root_number_from_sums,
    terms_needed,
)
from curves import DESK

E11 = WeierstrassCurve(0, -1, 1, -10, -20)
E32 = WeierstrassCurve(0, 0, 0, -1, 0)
E37 = WeierstrassCurve(0, 0, 1, -1, 0)

# frozen oracle values
with mpmath.workdps(40):
    L11 = mpmath.mpf("0.25384186085591068433775892335")
    OMEGA11 = mpmath.mpf("1.2692093042795534216887946168")
    L32 = mpmath.mpf("0.65551438857302995")
    OMEGA32 = mpmath.mpf("2.62205755429211981046483958989")


def quad_period(c):
    """2 * integral from the largest real root of f = 4x^3+b2x^2+2b4x+b6 to infinity."""
    b2, b4, b6, _ = b_invariants(c)
    with mpmath.workdps(40):
        roots = mpmath.polyroots([4, b2, 2 * b4, b6], maxsteps=200, extraprec=200)
        e1 = max(mpmath.re(r) for r in roots if abs(mpmath.im(r)) < mpmath.mpf(10) ** -20)
        # x = e1 + t^2 and f(e1 + s) / s = f'(e1) + (12 e1 + b2) s + 4 s^2
        d1 = (12 * e1 + 2 * b2) * e1 + 2 * b4
        d2 = 12 * e1 + b2
        g = lambda s: d1 + d2 * s + 4 * s * s
        val = mpmath.quad(lambda t: 4 / mpmath.sqrt(g(t * t)), [0, 1, 10, mpmath.inf])
        return +val


def float_terms(N, k):
    r = math.sqrt(N)
    return math.ceil(r / (2 * math.pi) * (2 * math.log(2) + k * math.log(10) - math.log(-math.expm1(-2 * math.pi / r))))


def test_terms_needed_examples():
    assert terms_needed(11, 10) == 13
    assert terms_needed(1, 1) == float_terms(1, 1)


def test_terms_needed_table_conductor():
    N = 42551829106699251024
    m = terms_needed(N, 2)
    assert m == 27774035742
    assert abs(m - float_terms(N, 2)) <= 2
    assert m > 10**10


@given(st.integers(1, 10**30), st.integers(1, 30))
def test_terms_needed_monotone(N, k):
    m = terms_needed(N, k)
    assert terms_needed(N, k + 1) >= m
    assert terms_needed(N + 1000, k) >= m
    assert coefficients_needed(N, k) >= m


def test_terms_needed_rejects():
    with pytest.raises(ValueError):
        terms_needed(0, 3)


def test_period_x3_minus_x():
    pd = real_period(E32)
    assert not pd.connected
    with mpmath.workdps(40):
        assert mpmath.almosteq(pd.omega, OMEGA32, rel_eps=1e-25)
    assert abs(pd.c_infty - mpmath.mpf("5.24411510858424")) < 1e-12
    # two real components: C_infty is twice the integral of dx/sqrt(x^3-x) over [1, inf)
    # x = 1 + t^2 removes the endpoint singularity
    integral = mpmath.quad(lambda t: 2 / mpmath.sqrt((1 + t * t) * (2 + t * t)), [0, 1, mpmath.inf])
    assert abs(pd.omega - integral) < 1e-12
    assert abs(pd.c_infty - 2 * integral) < 1e-12


def test_period_11a1():
    pd = real_period(E11)
    assert pd.connected
    with mpmath.workdps(40):
        assert abs(pd.omega - OMEGA11) < mpmath.mpf(10) ** -25
    assert pd.c_infty == pd.omega


@pytest.mark.parametrize("ainvs", DESK)
def test_period_matches_quadrature(ainvs):
    g = global_data(WeierstrassCurve(*ainvs))
    pd = real_period(g.model)
    q = quad_period(g.model)
    with mpmath.workdps(40):
        assert mpmath.almosteq(pd.omega, q, rel_eps=mpmath.mpf(10) ** -25)
        assert pd.c_infty == (pd.omega if pd.connected else 2 * pd.omega)
    assert pd.agm_steps <= 8


@pytest.mark.parametrize("fid", [(1, 0, -1), (2, 1, 7), (3, 2, -50), (4, 2, 49), (1, 20, -756)])
def test_period_family(fid):
    g = global_data(family_curve(FamilyId(*fid)))
    pd = real_period(g.model)
    with mpmath.workdps(40):
        assert mpmath.almosteq(pd.omega, quad_period(g.model), rel_eps=mpmath.mpf(10) ** -20)
    assert pd.agm_steps <= 8


def test_agm():
    v, steps = agm(mpmath.mpf(1), mpmath.sqrt(2), 30)
    assert abs(v - mpmath.mpf("1.19814023473559220743992249228")) < 1e-28
    assert steps <= 6


def test_l_values_at_k10():
    for c, ref in ((E11, L11), (E32, L32)):
        g = global_data(c)
        t = approximate_L1(g.model, g, 10)
        assert abs(t.s_m - ref) < 1e-8
        assert t.root_number == 1
    t = approximate_L1(E11, global_data(E11), 10)
    assert t.m == 13


def test_rank_one_near_zero():
    g = global_data(E37)
    t = approximate_L1(g.model, g, 8)
    assert t.root_number == -1
    assert abs(t.s_m) < 1e-6


def test_rank_two_near_zero():
    c = WeierstrassCurve(0, 1, 1, -2, 0)
    g = global_data(c)
    t = approximate_L1(g.model, g, 8)
    assert t.root_number == 1
    assert abs(t.s_m) < 1e-6


@pytest.mark.parametrize("ainvs,ratio", [
    ((0, -1, 1, -10, -20), mpmath.mpf(1) / 5),
    ((1, 0, 1, 4, -6), mpmath.mpf(1) / 6),
    ((1, 1, 1, -10, -10), mpmath.mpf(1) / 4),
])
def test_l_over_omega_rational(ainvs, ratio):
    g = global_data(WeierstrassCurve(*ainvs))
    t = approximate_L1(g.model, g, 12)
    assert abs(t.s_m / real_period(g.model).omega - ratio) < 1e-10


@pytest.mark.parametrize("ainvs", DESK[:6] + [(1, 0, 1, -19, 26), (1, 1, 1, -135, -660)])
def test_self_consistency(ainvs):
    g = global_data(WeierstrassCurve(*ainvs))
    for k in (3, 6):
        a = approximate_L1(g.model, g, k)
        b = approximate_L1(g.model, g, k + 3)
        assert abs(a.s_m - b.s_m) <= 2 * 10.0**-k


def test_table_reuse_gives_same_sum():
    g = global_data(family_curve(FamilyId(1, 2, -37)))
    t = APTable(g.model, g, coefficients_needed(g.conductor, 6))
    assert approximate_L1(g.model, g, 6, table=t).s_m == approximate_L1(g.model, g, 6).s_m
    small = APTable(g.model, g, 10)
    assert approximate_L1(g.model, g, 6, table=small).s_m == approximate_L1(g.model, g, 6).s_m


def test_block_size_does_not_change_sum():
    g = global_data(family_curve(FamilyId(3, 1, 11)))
    ref = approximate_L1(g.model, g, 8)
    assert approximate_L1(g.model, g, 8, block_size=777).s_m == ref.s_m
    assert approximate_L1(g.model, g, 8, workers=2).s_m == ref.s_m


def test_budget(monkeypatch):
    g = global_data(E11)
    with pytest.raises(BudgetExceeded) as exc:
        approximate_L1(E11, g, 10, max_terms=5)
    assert exc.value.m == 13 and exc.value.kind == "budget-exceeded"
    monkeypatch.setenv("SHAFORGE_MAX_TERMS", "7")
    assert max_terms_default() == 7
    with pytest.raises(BudgetExceeded):
        approximate_L1(E11, g, 10)


def test_root_number_from_sums():
    assert root_number_from_sums(1.0, 0.9, 1.1) == 1
    assert root_number_from_sums(1.0, 0.5, 0.5) == -1
