import pytest
from hypothesis import given, settings, strategies as st

from shaforge.ap_engine import ap_table
from shaforge.ec_core import WeierstrassCurve, invariants
from shaforge.errors import ClassInconsistent, DegenerateParameters
from shaforge.family import FamilyId, class_curves, family_curve, grid, isogeny_class
from shaforge.intarith import primes_up_to


def test_examples():
    assert family_curve(FamilyId(1, 0, -1)) == WeierstrassCurve(0, -14, 0, 13, 0)
    assert family_curve(FamilyId(2, 0, 3)) == WeierstrassCurve(0, 12, 0, 144, 0)


@pytest.mark.parametrize("n,p", [(0, 12), (1, 108), (2, 972), (3, 0)])
def test_degenerate(n, p):
    with pytest.raises(DegenerateParameters):
        FamilyId(1, n, p)


def test_bad_ids():
    with pytest.raises(ValueError):
        FamilyId(5, 0, 1)
    with pytest.raises(ValueError):
        FamilyId(1, -1, 1)
    assert FamilyId.parse("2,23,-348") == FamilyId(2, 23, -348)
    assert str(FamilyId(2, 23, -348)) == "E2(23,-348)"


@settings(max_examples=50)
@given(st.integers(0, 25), st.integers(-5000, 5000))
def test_e1_is_the_defining_cubic(n, p):
    if p in (0, 4 * 3 ** (2 * n + 1)):
        return
    q = 4 * 3 ** (2 * n + 1)
    c = family_curve(FamilyId(1, n, p))
    for x in (-3, 0, 2, 7):
        assert x**3 + c.a2 * x * x + c.a4 * x + c.a6 == x * (x + p) * (x + p - q)


@settings(max_examples=50)
@given(st.integers(0, 25), st.integers(-5000, 5000))
def test_members_are_nonsingular_and_2_isogenous_shape(n, p):
    if p in (0, 4 * 3 ** (2 * n + 1)):
        return
    for c in class_curves(n, p):
        inv = invariants(c)
        assert inv.disc != 0
        assert c.a6 == 0  # (0,0) is a rational 2-torsion point on every member


def test_isogeny_class_small():
    cls = isogeny_class(0, -1)
    assert len(cls.curves) == 4 and len({g.conductor for g in cls.gdata}) == 1
    bad = {ld.p for g in cls.gdata for ld in g.locals}
    good = [q for q in primes_up_to(547).tolist() if q not in bad]
    ref = ap_table(cls.gdata[0].model, cls.gdata[0], good)
    for g in cls.gdata[1:]:
        assert (ap_table(g.model, g, good) == ref).all()


def test_isogeny_class_table_row():
    cls = isogeny_class(20, -756)
    assert cls.conductor == 42551829106699251024


def test_isogeny_class_degenerate():
    with pytest.raises(DegenerateParameters):
        isogeny_class(0, 12)


def test_isogeny_class_detects_mismatch(monkeypatch):
    import shaforge.family as fam

    real = fam.class_curves
    monkeypatch.setattr(fam, "class_curves", lambda n, p: real(n, p)[:3] + [WeierstrassCurve(0, -1, 1, -10, -20)])
    with pytest.raises(ClassInconsistent):
        fam.isogeny_class(0, -1)


def test_grid_order():
    g = grid((0, 1), (-3, 13))
    assert g[:6] == [(0, -1), (0, 1), (0, -2), (0, 2), (0, -3), (0, 3)]
    assert (0, 12) not in g and (0, 0) not in g and (1, 12) in g
    assert [n for n, _ in g] == sorted(n for n, _ in g)
    assert len(g) == 2 * 16 - 1
