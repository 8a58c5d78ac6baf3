from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from imagemilnor.poly import (
    DEGREVLEX,
    NEG_DEGREVLEX,
    AmbientMismatch,
    Polynomial,
    compare_monomials,
)
from imagemilnor.ratfunc import RationalFunction

from conftest import poly

XY = ("x", "y")
Y12 = ("y1", "y2")


def test_examples():
    assert poly("x+y", XY) + poly("x-y", XY) == poly("2*x", XY)
    assert poly("y1-y2", Y12) * poly("y1+y2", Y12) == poly("y1^2-y2^2", Y12)
    p = poly("x^2*y - 3/2*y", XY)
    assert p + Polynomial.zero(XY) == p
    assert p.to_text() == "x^2*y - 3/2*y"


def test_ambient_mismatch():
    with pytest.raises(AmbientMismatch):
        poly("x", XY) + poly("y1", Y12)


def test_substitute_examples():
    p = poly("y1^2+y1*y2+y2^2", Y12)
    target = ("y1",)
    y1 = Polynomial.variable(target, "y1")
    assert p.substitute({"y1": y1, "y2": -y1}, target) == poly("y1^2", target)
    ident = {v: Polynomial.variable(Y12, v) for v in Y12}
    assert p.substitute(ident) == p
    y = Polynomial.variable(("y",), "y")
    assert poly("y1+y2", Y12).substitute({"y1": y, "y2": y}) == poly("2*y", ("y",))


def test_derivative_and_evaluate():
    assert poly("x^2*y", XY).diff("x") == poly("2*x*y", XY)
    assert poly("7", XY).diff("x").is_zero()
    assert poly("x^3+y^2", XY).diff("y") == poly("2*y", XY)
    with pytest.raises(AmbientMismatch):
        poly("x", XY).diff("z")
    assert poly("y1+y2", Y12).evaluate({"y1": 2, "y2": 3}) == 5
    assert poly("x^2+y^2", XY).evaluate({"x": 3, "y": 4}) == 25
    with pytest.raises(AmbientMismatch):
        poly("x", XY).evaluate({"x": 1})


def test_orders():
    x2, x1, one = (2, 0), (1, 0), (0, 0)
    assert compare_monomials(DEGREVLEX, x2, x1) > 0
    assert compare_monomials(NEG_DEGREVLEX, one, x1) > 0
    assert compare_monomials(NEG_DEGREVLEX, x1, x2) > 0
    assert compare_monomials(DEGREVLEX, x1, x1) == 0
    assert poly("x + x^2", XY).leading_monomial(NEG_DEGREVLEX) == (1, 0)


def test_parametric_text_round_trip():
    p = poly("(t+1)/(t-1)*x - t*y^2 + 3", XY)
    assert p.is_parametric()
    assert poly(p.to_text(), XY) == p
    assert p.specialize_parameter(2) == poly("3*x - 2*y^2 + 3", XY)


coeff = st.fractions(min_value=-3, max_value=3, max_denominator=3)
terms = st.dictionaries(st.tuples(st.integers(0, 3), st.integers(0, 3)), coeff, max_size=5)
polys = terms.map(lambda d: Polynomial(XY, d))
points = st.tuples(coeff, coeff)


@settings(max_examples=100, deadline=None)
@given(polys, polys, polys)
def test_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a and a * b == b * a
    assert a - a == Polynomial.zero(XY)


@settings(max_examples=100, deadline=None)
@given(polys, polys, polys, points)
def test_substitute_then_evaluate(p, u, v, pt):
    at = {"x": pt[0], "y": pt[1]}
    lhs = p.substitute({"x": u, "y": v}).evaluate(at)
    rhs = p.evaluate({"x": u.evaluate(at), "y": v.evaluate(at)})
    assert lhs == rhs


@settings(max_examples=100, deadline=None)
@given(polys, polys, st.fractions(min_value=-4, max_value=4, max_denominator=5))
def test_parameter_specialization_agrees(a, b, t0):
    t = RationalFunction.parameter()
    at = a.scale(t + 1)
    bt = b.scale(t * t - 2)
    late = (at * bt + at).specialize_parameter(t0)
    early = a.scale(t0 + 1) * b.scale(t0 * t0 - 2) + a.scale(t0 + 1)
    assert late == early
