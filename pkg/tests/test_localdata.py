import re

import pytest
from hypothesis import given, settings, strategies as st

from shaforge.ec_core import WeierstrassCurve, discriminant, invariants
from shaforge.errors import DegenerateParameters
from shaforge.family import FamilyId, class_curves, family_curve
from shaforge.intarith import factor, valuation
from shaforge.localdata import global_data, tate_local
from curves import DESK, SMALL

E32 = WeierstrassCurve(0, 0, 0, -1, 0)


def components(kodaira: str) -> int:
    fixed = {"I0": 1, "II": 1, "III": 2, "IV": 3, "I0*": 5, "IV*": 7, "III*": 8, "II*": 9}
    if kodaira in fixed:
        return fixed[kodaira]
    m = re.fullmatch(r"I(\d+)(\*?)", kodaira)
    assert m, kodaira
    n = int(m.group(1))
    return n + 5 if m.group(2) else n


def kodaira_p_ge_5(c4, c6, disc, p):
    """Type at p >= 5 of a minimal model, read off the valuations."""
    a, d = valuation(c4, p) if c4 else 99, valuation(disc, p)
    if d == 0:
        return "I0", 0
    if a == 0:
        return f"I{d}", 1
    table = {2: "II", 3: "III", 4: "IV", 6: "I0*", 8: "IV*", 9: "III*", 10: "II*"}
    if d > 6 and a == 2:
        return f"I{d - 6}*", 2
    return table[d], 2


def check_local(g):
    for ld in g.locals:
        assert ld.ord_disc == valuation(g.disc_min, ld.p)
        # Ogg's formula, valid at every prime
        assert ld.f_p == ld.ord_disc + 1 - components(ld.kodaira)
        assert (ld.f_p == 1) == (ld.reduction in ("split-mult", "nonsplit-mult"))
        if ld.reduction == "split-mult":
            assert ld.c_p == ld.ord_disc
        if ld.p >= 5:
            assert ld.f_p <= 2
        if ld.p == 3:
            assert ld.f_p <= 5
        if ld.p == 2:
            assert ld.f_p <= 8
        assert ld.c_p >= 1


def test_good_prime():
    ld = tate_local(E32, 7)
    assert (ld.reduction, ld.c_p, ld.f_p, ld.kodaira) == ("good", 1, 0, "I0")


def test_x3_minus_x_global():
    g = global_data(E32)
    assert g.conductor == 32
    assert g.c_fin == tate_local(E32, 2).c_p == 2
    assert [ld.p for ld in g.locals] == [2]


@pytest.mark.parametrize("label", sorted(SMALL))
def test_small_conductors(label):
    ainvs, N, _ = SMALL[label]
    g = global_data(WeierstrassCurve(*ainvs))
    assert g.conductor == N
    check_local(g)


def test_11a1_split_i5():
    ld = tate_local(WeierstrassCurve(0, -1, 1, -10, -20), 11)
    assert (ld.kodaira, ld.reduction, ld.c_p) == ("I5", "split-mult", 5)


@pytest.mark.parametrize("ainvs", DESK)
def test_desk_curves(ainvs):
    g = global_data(WeierstrassCurve(*ainvs))
    check_local(g)
    inv = invariants(g.model)
    for ld in g.locals:
        if ld.p >= 5:
            assert (ld.kodaira, ld.f_p) == kodaira_p_ge_5(inv.c4, inv.c6, inv.disc, ld.p)


def rad(v):
    return {p for p, _ in factor(v).factors}


@settings(max_examples=60)
@given(st.integers(0, 3), st.integers(-400, 400), st.integers(1, 4))
def test_family_properties(n, p, i):
    try:
        c = family_curve(FamilyId(i, n, p))
    except DegenerateParameters:
        return
    g = global_data(c)
    check_local(g)
    assert rad(g.conductor) == rad(g.disc_min)
    inv = invariants(g.model)
    for ld in g.locals:
        if ld.p >= 5:
            assert (ld.kodaira, ld.f_p) == kodaira_p_ge_5(inv.c4, inv.c6, inv.disc, ld.p)


@given(st.integers(-30, 30), st.integers(-30, 30), st.integers(-30, 30))
@settings(max_examples=80)
def test_random_short_curves(a2, a4, a6):
    c = WeierstrassCurve(0, a2, 0, a4, a6)
    if discriminant(c) == 0:
        return
    g = global_data(c)
    check_local(g)
    assert rad(g.conductor) == rad(g.disc_min)


def test_e1_20_minus_1436_multiplicative_at_7():
    g = global_data(family_curve(FamilyId(1, 20, -1436)))
    ld = g.local(7)
    assert ld.f_p == 1 and ld.reduction in ("split-mult", "nonsplit-mult")
    assert g.conductor == 1832369310703810488288


@pytest.mark.parametrize("i", [1, 2, 3, 4])
def test_additive_at_3_for_23_minus_348(i):
    g = global_data(family_curve(FamilyId(i, 23, -348)))
    ld = g.local(3)
    assert ld.reduction == "additive" and ld.f_p == 2
    assert valuation(g.conductor, 3) == 2


@pytest.mark.parametrize("n,p,N", [(20, -756, 42551829106699251024), (23, -8, 7441767284139709375008)])
def test_table_conductors(n, p, N):
    assert {global_data(c).conductor for c in class_curves(n, p)} == {N}
