import itertools

import numpy as np
import pytest

from kummerflags import (Divisor, MonomialFunction, Place, count_bounds, curve_make,
                         enumerate_gamma, enumerate_T0, ff_make, is_principal, isodual, monomial_divisor,
                         period, periods, translation_equivalence)
from kummerflags.errors import PeriodNotFoundWithinBound, PreconditionViolated
from kummerflags.finite_field import parse_poly
from kummerflags.isogroup import FLAG_BOUND_NOTE, lemma_hypotheses, signs


@pytest.fixture(scope="module")
def f121_T0(f121):
    D = f121.eval_set()
    return enumerate_T0(f121.curve, f121.scope, (5, 5), D.places[0])


@pytest.fixture(scope="module")
def f121_iso(f121):
    return isodual(f121.curve, f121.scope, f121.beta, f121.eval_set())


@pytest.mark.parametrize("name, expected", [("herm", 5), ("k2", 5), ("k3", 9)])
def test_periods_single(name, expected, request):
    cfg = request.getfixturevalue(name)
    p = period(cfg.curve, 0)
    assert p.pi == expected
    P, Q = Place.infinity(), cfg.curve.ramified_place(0)
    d = monomial_divisor(cfg.curve, p.witness.as_term())
    assert d == Divisor({P: expected, Q: -expected})
    for u in range(1, expected):
        assert is_principal(cfg.curve, Divisor({P: u, Q: -u})) is None


def test_period_witness_hermitian(herm):
    w = period(herm.curve, 0).witness
    assert w == MonomialFunction.x_minus(herm.curve, 0, -1).scale(w.as_term().coeff)


def test_periods_f121(f121):
    D = f121.eval_set()
    ps = periods(f121.curve, f121.scope, D.places[0])
    assert [p.pi for p in ps] == [5, 5]
    assert all(p.witness(D.places[0]) == 1 for p in ps)


def test_period_errors(herm):
    with pytest.raises(ValueError):
        period(herm.curve, 9)
    with pytest.raises(ValueError):
        period(herm.curve, 0, bound=0)


def test_period_bound_widening():
    # m = 3 does not satisfy 2 <= r < m with r = 4; the period is still found by widening
    F16 = ff_make(2, 4, "x^4+x+1", "x")
    C = curve_make(F16, 3, parse_poly("x^4+x", 2))
    assert not lemma_hypotheses(C)
    assert period(C, 0, bound=1).pi == 3


def test_period_not_found(monkeypatch, herm):
    import importlib
    iso = importlib.import_module("kummerflags.isogroup")
    monkeypatch.setattr(iso, "PERIOD_CAP_FACTOR", 0)
    with pytest.raises(PeriodNotFoundWithinBound):
        iso.period(herm.curve, 0, bound=2)


def test_T0_trivial_single(herm):
    T0 = enumerate_T0(herm.curve, (0,), (5,))
    assert T0.members == [(0,)]
    assert T0.witnesses[(0,)] == MonomialFunction.constant(herm.curve, 1)


def test_T0_f121(f121_T0):
    T0 = f121_T0
    assert (0, 0) in T0
    assert sorted(T0.members) == [(k, k) for k in range(5)]
    assert 25 % len(T0) == 0
    for a, b in itertools.product(T0.members, repeat=2):
        assert T0.add(a, b) in T0


def test_T0_witness_algebra(f121, f121_T0):
    D = f121.eval_set()
    F = f121.field
    per = periods(f121.curve, f121.scope, D.places[0])
    T0 = f121_T0
    for a, b in itertools.product(T0.members, repeat=2):
        c = T0.add(a, b)
        qs = [(x + y) // 5 for x, y in zip(a, b)]
        prod = T0.witnesses[a] * T0.witnesses[b]
        for p, qi in zip(per, qs):
            if qi:
                prod = prod * p.witness ** (-qi)
        lhs, rhs = D.evaluate(prod), D.evaluate(T0.witnesses[c])
        ratio = F.div(lhs, rhs)
        assert np.all(ratio == ratio[0])


def test_lattice_decomposition(f121, f121_T0):
    T0 = f121_T0
    C = f121.curve
    P = Place.infinity()
    Q = [C.ramified_place(k) for k in f121.scope]
    for d1, d2 in itertools.product(range(-7, 8), repeat=2):
        div = Divisor({P: d1 + d2, Q[0]: -d1, Q[1]: -d2})
        theta, lam = T0.decompose((d1, d2))
        assert [t + 5 * l for t, l in zip(theta, lam)] == [d1, d2]
        assert (is_principal(C, div) is not None) == (theta in T0)


def test_gamma_sweep_hermitian(herm, herm_D, herm_iso2):
    sw = enumerate_gamma(herm.curve, herm.scope, (2,), herm_iso2.x, [(-2, 4)], herm_D,
                         negatives=6)
    assert [r.gamma for r in sw.reports] == [(-3,), (2,), (7,), (12,)]
    assert sw.all_confirmed and sw.negatives_ok
    ident = [r for r in sw.reports if r.gamma == (2,)][0]
    assert np.array_equal(ident.x_predicted, herm_iso2.x)
    distinct = {tuple(r.x_predicted.tolist()) for r in sw.reports}
    assert len(distinct) <= count_bounds(16, (5,), [(0,)]).iso_vector_bound


def test_gamma_sweep_threads_match(herm, herm_D, herm_iso2):
    a = enumerate_gamma(herm.curve, herm.scope, (2,), herm_iso2.x, [(0, 2)], herm_D, negatives=3)
    b = enumerate_gamma(herm.curve, herm.scope, (2,), herm_iso2.x, [(0, 2)], herm_D, negatives=3,
                        workers=2)
    assert [r.gamma for r in a.reports] == [r.gamma for r in b.reports]
    assert a.negatives == b.negatives


def test_gamma_sweep_empty_box(herm, herm_D, herm_iso2):
    sw = enumerate_gamma(herm.curve, herm.scope, (2,), herm_iso2.x, [(1, 1)], herm_D)
    assert sw.reports == [] and sw.negatives == []
    with pytest.raises(ValueError):
        enumerate_gamma(herm.curve, herm.scope, (2,), herm_iso2.x, [], herm_D)


def test_translation_equivalence_hermitian(herm, herm_D):
    te = translation_equivalence(herm.curve, herm.scope, (37,), (30,), herm_D)
    assert te.beta_prime == (37 + 75,)
    assert te.identical and te.verified
    assert np.all(te.v == 1)


def test_translation_equivalence_koetter3(k3):
    te = translation_equivalence(k3.curve, k3.scope, (283,), (126,), k3.eval_set())
    assert te.beta_prime == (283 + 63 * 9,)
    assert te.identical and te.verified


def test_translation_equivalence_preconditions(herm, herm_D):
    with pytest.raises(PreconditionViolated):
        translation_equivalence(herm.curve, herm.scope, (37,), (15,), herm_D)
    with pytest.raises(PreconditionViolated):
        translation_equivalence(herm.curve, herm.scope, (37,), (7,), herm_D)


def test_translation_equivalence_f121(f121):
    te = translation_equivalence(f121.curve, f121.scope, f121.beta, (120, 120), f121.eval_set())
    assert te.beta_prime == (301, 301)
    assert not te.identical and te.verified
    assert np.array_equal(te.v, f121.expected_vector("v"))
    assert set(signs(f121.field, te.v)) == {1, -1}


def test_f121_dual(f121_iso):
    assert f121_iso.is_dual


def test_count_bounds():
    b = count_bounds(16, (5,), [(0,)])
    assert (b.iso_vector_bound, b.flag_bound, b.e, b.o, b.T0_zero) == (15, 15, 0, 1, 1)
    assert b.note is None
    b = count_bounds(121, (5, 5), [(k, k) for k in range(5)])
    assert (b.iso_vector_bound, b.flag_bound, b.o, b.T0_zero) == (5 * 3600, 36000, 2, 5)
    assert b.note == FLAG_BOUND_NOTE
    b = count_bounds(9, (4, 3), [(0, 0), (1, 0), (2, 0)])
    assert (b.e, b.o, b.T0_zero) == (1, 1, 2)
    assert b.iso_vector_bound == 2 * 4 * 8
