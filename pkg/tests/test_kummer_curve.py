import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from kummerflags import (Divisor, MonomialFunction, MonomialTerm, Place, curve_make,
                         enumerate_places, evaluate, ff_make, monomial_divisor, monomial_valuation,
                         parse_function)
from kummerflags.errors import (ExplicitOrderingIncomplete, GcdViolation, NonSeparable,
                                PoleAtPlace, UnsupportedPlace)
from kummerflags.finite_field import parse_poly

F16 = ff_make(2, 4, "x^4+x+1", "x")
F64 = ff_make(2, 6, "x^6+x^4+x^3+x+1", "x")
HERM = curve_make(F16, 5, parse_poly("x^4+x", 2))
K2 = curve_make(F16, 5, parse_poly("x^2+x", 2))
K3 = curve_make(F64, 9, parse_poly("x^4+x^2+x", 2))


@pytest.mark.parametrize("curve, g, places", [(HERM, 6, 65), (K2, 2, 33), (K3, 12, 257)])
def test_genus_and_place_count(curve, g, places):
    assert curve.g == g
    pl = enumerate_places(curve)
    assert len(pl) == places
    assert pl[0].is_infinity
    assert len(set(pl)) == places


def test_places_lie_on_curve():
    for p in enumerate_places(HERM)[1:]:
        assert HERM.on_curve(p.x, p.y)


def test_curve_errors():
    with pytest.raises(GcdViolation):
        curve_make(F16, 4, parse_poly("x^2+x", 2))
    with pytest.raises(NonSeparable):
        curve_make(F16, 5, parse_poly("x^2+1", 2))
    with pytest.raises(GcdViolation):
        curve_make(F16, 1, parse_poly("x^2+x", 2))


def test_explicit_ordering():
    default = enumerate_places(HERM)
    aff = [(p.x, p.y) for p in default if not p.is_infinity and not p.is_ramified]
    rev = enumerate_places(HERM, aff[::-1])
    assert len(rev) == 65
    assert [(p.x, p.y) for p in rev[5:]] == aff[::-1]
    with pytest.raises(ExplicitOrderingIncomplete):
        enumerate_places(HERM, aff[1:])
    with pytest.raises(ExplicitOrderingIncomplete):
        enumerate_places(HERM, aff + aff[:1])
    with pytest.raises(ExplicitOrderingIncomplete):
        enumerate_places(HERM, [(1, 1)] + aff)


def test_cyclic_ordering_puts_one_last():
    pl = enumerate_places(K3, "cyclic")
    xs = [p.x for p in pl[1:] if not p.is_ramified]
    assert xs[-1] == 1


def test_x_minus_root_divisor():
    m = HERM.m
    for k, a in enumerate(HERM.roots):
        t = MonomialTerm(tuple(1 if i == k else 0 for i in range(4)), 0)
        d = monomial_divisor(HERM, t)
        assert d[HERM.ramified_place(k)] == m
        assert d[Place.infinity()] == -m
        assert d.degree == 0


def test_y_divisor():
    t = MonomialTerm((0, 0, 0, 0), 1)
    assert monomial_valuation(HERM, t, Place.infinity()) == -4
    for k in range(4):
        assert monomial_valuation(HERM, t, HERM.ramified_place(k)) == 1
    assert monomial_divisor(HERM, t).degree == 0


def test_constant_valuation():
    t = MonomialTerm((0, 0, 0, 0), 0, 7)
    assert all(v == 0 for v in monomial_divisor(HERM, t).coeffs.values())
    with pytest.raises(UnsupportedPlace):
        monomial_valuation(HERM, t, Place.affine(1, 1))


def test_y_over_x():
    d = monomial_divisor(HERM, MonomialTerm((-1, 0, 0, 0), 1))
    Q = HERM.ramified_places()
    expected = Divisor({Place.infinity(): 1, Q[0]: -4, Q[1]: 1, Q[2]: 1, Q[3]: 1})
    assert d == expected


def test_x_power_divisors():
    d = monomial_divisor(HERM, MonomialTerm((-7, 0, 0, 0), 0))
    assert d == Divisor({Place.infinity(): 35, HERM.ramified_place(0): -35})
    d = monomial_divisor(K3, MonomialTerm((-31,) + (0,) * (len(K3.roots) - 1), 0))
    assert d[Place.infinity()] == 279 and d[K3.ramified_place(0)] == -279


def test_evaluate_basics():
    a = F16.generator
    pl = [p for p in enumerate_places(HERM) if not p.is_infinity and p.x == a]
    assert pl
    x = MonomialFunction.x_minus(HERM, 0)
    assert all(evaluate(HERM, x, p) == a for p in pl)
    c = MonomialFunction.constant(HERM, 9)
    assert evaluate(HERM, c, pl[0]) == 9
    assert evaluate(HERM, MonomialTerm((0, 0, 0, 0), 0, 9), HERM.ramified_place(2)) == 9


def test_fy_reproduces_y(herm):
    f = parse_function(herm.curve, "α^8*x^7")
    D = herm.eval_set()
    y = herm.expected_vector("y")
    assert np.array_equal(D.evaluate(f), y[:-1])
    assert f(herm.curve.ramified_place(0)) == 0


def test_pole_at_evaluation():
    f = MonomialFunction.x_minus(HERM, 0, -1)
    with pytest.raises(PoleAtPlace):
        f(HERM.ramified_place(0))


@pytest.mark.parametrize("text", ["α^8*x^7", "(x-α^5)^-1", "x^-1*y^2 + α^3", "1", "0"])
def test_parse_render_roundtrip(text):
    f = parse_function(HERM, text)
    assert parse_function(HERM, f.render()) == f


exps = st.tuples(*[st.integers(-3, 3)] * 4)


@settings(max_examples=40, deadline=None)
@given(exps, st.integers(0, 4), exps, st.integers(0, 4))
def test_monomial_products(e1, j1, e2, j2):
    f = MonomialFunction.from_term(HERM, MonomialTerm(e1, j1))
    g = MonomialFunction.from_term(HERM, MonomialTerm(e2, j2))
    h = f * g
    D = [p for p in enumerate_places(HERM)[1:] if not p.is_ramified][:20]
    for p in D:
        assert h(p) == F16.smul(f(p), g(p))
    assert h.valuation_inf() == f.valuation_inf() + g.valuation_inf()
    for k in range(4):
        assert h.valuation_ram(k) == f.valuation_ram(k) + g.valuation_ram(k)
    assert (f * f.inverse()) == MonomialFunction.constant(HERM, 1)


@settings(max_examples=30, deadline=None)
@given(exps, st.integers(0, 4))
def test_divisor_degree_zero(e, j):
    assert monomial_divisor(HERM, MonomialTerm(e, j)).degree == 0
