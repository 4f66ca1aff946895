from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from a3char.algebra import (
    LaurentPoly,
    RationalFn,
    TruncatedSeries,
    VarSet,
    coeff,
    parse_poly,
    poly_diff,
    poly_exact_div,
    poly_mul,
    poly_subst,
    series_expand,
)
from a3char.errors import (
    DenominatorNotUnit,
    ExponentOutOfCaps,
    InexactDivision,
    NonInvertibleBinding,
    ParseError,
    UnknownVariable,
    VarSetMismatch,
)
from a3char.roots import X

XV = VarSet(["x"])
TV = VarSet(["t"])
XY = VarSet(["x", "y"])
TZ1 = VarSet(["t1", "z1", "z2", "z3"])


def P(text, vs=XV):
    return LaurentPoly.parse(text, vs)


# -- documented examples-------------------------------------------------------------


def test_mul_examples():
    assert poly_mul(P("1 + x"), P("1 - x")) == P("1 - x^2")
    z = VarSet(["z1"])
    assert P("z1", z) * 1 == P("z1", z)
    assert P("x + x^-1") ** 2 == P("x^2 + 2 + x^-2")


def test_mul_varset_mismatch():
    with pytest.raises(VarSetMismatch):
        P("x") * P("t", TV)


def test_exact_div_examples():
    assert poly_exact_div(P("1 - x^2"), P("1 - x")) == P("1 + x")
    assert poly_exact_div(P("x^2 - x^-2"), P("x - x^-1")) == P("x + x^-1")
    with pytest.raises(InexactDivision):
        poly_exact_div(P("1 + x"), P("1 - x"))


def test_exact_div_by_zero():
    with pytest.raises(ZeroDivisionError):
        P("x").exact_div(LaurentPoly.zero(XV))


def test_subst_examples():
    z = VarSet(["z1", "z2"])
    fund = LaurentPoly.parse("x1 + x1^-1*x2 + x2^-1*x3 + x3^-1", X)
    assert poly_subst(P("z1", z), {"z1": fund}) == fund
    assert poly_subst(P("z1^2 - z2", z), {"z1": 4, "z2": 6}).constant_term() == 10
    assert poly_subst(P("1", z), {"z1": fund}, target=X) == LaurentPoly.constant(X, 1)


def test_subst_negative_power_needs_monomial():
    with pytest.raises(NonInvertibleBinding):
        P("x^-1").subst({"x": P("1 + y", XY)})
    assert P("x^-2").subst({"x": P("2*y", XY)}) == P("1/4*y^-2", XY)


def test_diff_examples():
    z = VarSet(["z1", "z2", "z3"])
    assert poly_diff(P("z1^2*z2", z), "z1") == P("2*z1*z2", z)
    assert poly_diff(P("x^-1"), "x") == P("-x^-2")
    assert poly_diff(P("z1", z), "z3") == LaurentPoly.zero(z)
    with pytest.raises(UnknownVariable):
        poly_diff(P("x"), "q")


def test_series_examples():
    s = series_expand(RationalFn(P("1", TV), P("1 - t", TV)), [3], ["t"])
    assert s.to_poly() == P("1 + t + t^2 + t^3", TV)
    d1 = LaurentPoly.parse("1 - t1*z1 + t1^2*z2 - t1^3*z3 + t1^4", TZ1)
    s = series_expand(RationalFn(LaurentPoly.constant(TZ1, 1), d1), [2], ["t1"])
    z = s.coeff_varset
    assert coeff(s, (1,)) == LaurentPoly.parse("z1", z)
    assert coeff(s, (2,)) == LaurentPoly.parse("z1^2 - z2", z)


def test_coeff_examples():
    s = TruncatedSeries(TV, [1], VarSet([]), {(0,): 1, (1,): 2})
    assert coeff(s, (1,)).constant_term() == 2
    with pytest.raises(ExponentOutOfCaps):
        coeff(s, (2,))


def test_series_denominator_not_unit():
    with pytest.raises(DenominatorNotUnit):
        series_expand(RationalFn(P("1", TV), P("t", TV)), [2], ["t"])
    with pytest.raises(DenominatorNotUnit):
        d = LaurentPoly.parse("t1 - z1", TZ1)
        series_expand(RationalFn(LaurentPoly.constant(TZ1, 1), d), [2], ["t1"])


def test_parse_errors():
    for bad in ("x^", "1 +", "x*q", "2**x", ""):
        with pytest.raises(ParseError):
            parse_poly(bad, XV)


def test_canonical_format():
    d1 = LaurentPoly.parse("t1^4 - t1^3*z3 + t1^2*z2 - t1*z1 + 1", TZ1)
    assert str(d1) == "1 - t1*z1 + t1^2*z2 - t1^3*z3 + t1^4"
    assert str(P("3 - 1/2*x^-1")) == "-1/2*x^-1 + 3"
    assert str(LaurentPoly.zero(XV)) == "0"


def test_fraction_coefficients_normalize():
    p = P("1/2*x") + P("1/2*x")
    assert p.coeff((1,)) == 1 and type(p.coeff((1,))) is int
    assert P("x").scale(Fraction(1, 3)).coeff((1,)) == Fraction(1, 3)


# -- properties -------------------------------------------------------------------

coeffs = st.integers(-5, 5)
exps = st.tuples(st.integers(-3, 3), st.integers(-3, 3))
polys = st.dictionaries(exps, coeffs, max_size=6).map(lambda d: LaurentPoly(XY, d))


@settings(max_examples=60, deadline=None)
@given(polys, polys, polys)
def test_ring_laws(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == LaurentPoly.zero(XY)


@settings(max_examples=60, deadline=None)
@given(polys, polys)
def test_division_round_trip(a, b):
    if not b:
        return
    assert (a * b).exact_div(b) == a


@settings(max_examples=60, deadline=None)
@given(polys, polys)
def test_leibniz(a, b):
    for v in ("x", "y"):
        assert (a * b).diff(v) == a.diff(v) * b + a * b.diff(v)


@settings(max_examples=60, deadline=None)
@given(polys)
def test_text_round_trip(a):
    assert LaurentPoly.parse(str(a), XY) == a


@settings(max_examples=40, deadline=None)
@given(st.dictionaries(st.integers(0, 4), coeffs, max_size=4),
       st.lists(st.tuples(st.integers(1, 3), st.integers(-3, 3)), min_size=1, max_size=3))
def test_series_times_denominator(num_terms, factors):
    """Expanding N/D and multiplying back by D recovers N inside the caps."""
    num = LaurentPoly(TV, {(e,): c for e, c in num_terms.items()})
    fs = [LaurentPoly(TV, {(0,): 1, (k,): c}) for k, c in factors]
    r = RationalFn.from_factors(num, fs)
    s = series_expand(r, [6], ["t"])
    assert s.mul_poly(r.den) == TruncatedSeries(TV, [6], s.coeff_varset, num.split(["t"]))
