import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from kummerflags import (FieldSpec, RowReducer, ff_arith, ff_make, ff_sqrt_char2, row_reduce)
from kummerflags.errors import (CharacteristicNotPrime, DivisionByZero, NonPrimitiveGenerator,
                                OddCharacteristic, ReducibleModulus, SpecMismatch)
from kummerflags.finite_field import rank, solve

from oracles import naive_add, naive_inv, naive_mul, naive_pow, scalar_nullspace, scalar_rank

F16 = ff_make(2, 4, "x^4+x+1", "x")
F64 = ff_make(2, 6, "x^6+x^4+x^3+x+1", "x")
F121 = ff_make(11, 2, "x^2-4x-9", "x")
F8 = ff_make(2, 3, "x^3+x+1", "x")


def test_f16_modulus_relation():
    a = F16.generator
    assert F16.spow(a, 4) == F16.sadd(a, 1)
    assert F16.q == 16


def test_f121_modulus_relation():
    a = F121.generator
    assert F121.spow(a, 2) == F121.sadd(F121.smul(4, a), 9)


def test_prime_field():
    F2 = ff_make(2, 1, "x+1", "1")
    assert F2.q == 2
    assert F2.smul(1, 1) == 1
    assert F2.sadd(1, 1) == 0


@pytest.mark.parametrize("args, exc", [
    ((4, 2, "x^2+x+1", "x"), CharacteristicNotPrime),
    ((2, 4, "x^4+x^2+1", "x"), ReducibleModulus),
    ((2, 4, "x^4+x^3+x^2+x+1", "x"), NonPrimitiveGenerator),
    ((2, 4, "x^3+x+1", "x"), ReducibleModulus),
])
def test_construction_errors(args, exc):
    with pytest.raises(exc):
        ff_make(*args)


def test_alpha_times_alpha_cubed():
    a = F16.element(F16.generator)
    assert ff_arith(a, a**3, "mul") == a + 1


def test_ff_arith_ops():
    a, b = F16.element(F16.alpha(3)), F16.element(F16.alpha(7))
    assert ff_arith(a, b, "div") * b == a
    assert ff_arith(a, b, "sub") + b == a
    assert ff_arith(a, None, "inv") * a == 1
    assert ff_arith(a, None, "neg") + a == 0
    assert ff_arith(a, None, "pow", e=-2) * a * a == 1
    with pytest.raises(ValueError):
        ff_arith(a, b, "mod")


def test_division_by_zero():
    with pytest.raises(DivisionByZero):
        F16.sinv(0)
    with pytest.raises(DivisionByZero):
        F16.inv(np.array([1, 0]))


def test_mixed_fields_rejected():
    F16b = ff_make(2, 4, "x^4+x^3+1", "x")
    with pytest.raises(SpecMismatch):
        F16.element(2) + F16b.element(2)


@pytest.mark.parametrize("F", [F16, F64, F121])
def test_lagrange_and_identity(F):
    a = np.arange(1, F.q)
    assert np.all(F.power(a, F.q - 1) == 1)
    assert np.array_equal(F.mul(a, 1), a)


@pytest.mark.parametrize("F", [F8, F16, F121])
def test_tables_match_naive(F):
    xs = np.arange(F.q)
    A, B = np.meshgrid(xs, xs)
    prod = F.mul(A, B)
    for a in range(0, F.q, max(1, F.q // 12)):
        for b in range(F.q):
            assert prod[b, a] == naive_mul(F, a, b)
            assert F.sadd(a, b) == naive_add(F, a, b)
    for a in range(1, F.q):
        assert F.sinv(a) == naive_inv(F, a)


def test_sqrt_small():
    assert F16.sqrt(0) == 0 and F16.sqrt(1) == 1
    a = F16.generator
    assert F16.sqrt(F16.smul(a, a)) == a
    assert ff_sqrt_char2(F16.element(F16.alpha(2))) == F16.element(a)


def test_sqrt_exhaustive_f64():
    for a in range(64):
        s = int(F64.sqrt(a))
        assert F64.smul(s, s) == a


def test_sqrt_odd_char():
    with pytest.raises(OddCharacteristic):
        F121.sqrt(4)


def test_render_parse_roundtrip():
    for F in (F16, F121):
        for v in range(F.q):
            assert F.parse(F.render(v)) == v
    assert F16.render(F16.alpha(9)) == "α^9"
    assert F121.parse("-1") == 10


@given(st.integers(1, 15), st.integers(1, 15), st.integers(-30, 30))
def test_power_laws(a, b, e):
    assert F16.spow(F16.smul(a, b), e) == F16.smul(F16.spow(a, e), F16.spow(b, e))
    if e >= 0:
        assert F16.spow(a, e) == naive_pow(F16, a, e)


@given(st.lists(st.integers(0, 120), min_size=3, max_size=3))
def test_distributive_f121(v):
    a, b, c = v
    assert F121.smul(a, F121.sadd(b, c)) == F121.sadd(F121.smul(a, b), F121.smul(a, c))


def test_row_reduce_identity_and_zero():
    red = row_reduce(F16, np.eye(3, dtype=np.int64), mode="nullspace")
    assert red.rank == 3 and red.nullspace.shape == (0, 3)
    red = row_reduce(F16, np.zeros((2, 5), dtype=np.int64), mode="nullspace")
    assert red.rank == 0 and red.nullspace.shape == (5, 5)
    with pytest.raises(ValueError):
        row_reduce(F16, np.eye(2, dtype=np.int64), mode="bogus")


@pytest.mark.parametrize("r", [0, 5, 13, 20])
def test_rank_nullity_random(r):
    rng = np.random.default_rng(r)
    A = rng.integers(0, 16, (40, r))
    B = rng.integers(0, 16, (r, 20))
    M = F16.matmul(A, B) if r else np.zeros((40, 20), dtype=np.int64)
    red = row_reduce(F16, M, mode="nullspace")
    assert red.rank == scalar_rank(F16, M.tolist())
    assert red.rank + red.nullspace.shape[0] == 20
    assert not F16.matmul(M, red.nullspace.T).any()
    other = scalar_nullspace(F16, M.tolist(), 20)
    assert len(other) == red.nullspace.shape[0]
    if other:
        assert rank(F16, np.vstack([red.nullspace, other])) == len(other)


def test_row_reducer_matches_batch():
    rng = np.random.default_rng(7)
    M = F121.matmul(rng.integers(0, 121, (60, 9)), rng.integers(0, 121, (9, 30)))
    red = RowReducer(F121, 30)
    for i in range(0, 60, 7):
        red.feed(M[i:i + 7])
    R = row_reduce(F121, M)
    assert red.rank == R.rank == 9
    assert np.array_equal(red.basis, R.rref)
    assert red.contains(M[3]) and red.rows_seen == 60


def test_solve():
    rng = np.random.default_rng(3)
    while True:
        A = rng.integers(0, 16, (6, 6))
        if rank(F16, A) == 6:
            break
    x = rng.integers(0, 16, 6)
    assert np.array_equal(solve(F16, A, F16.matmul(A, x)), x)
    with pytest.raises(ValueError):
        solve(F16, np.zeros((2, 2), dtype=np.int64), np.ones(2, dtype=np.int64))


@settings(max_examples=25, deadline=None)
@given(st.integers(1, 6), st.integers(1, 8), st.integers(0, 2**32 - 1))
def test_rref_canonical_under_row_ops(rows, cols, seed):
    rng = np.random.default_rng(seed)
    M = rng.integers(0, 8, (rows, cols))
    T = rng.integers(0, 8, (rows, rows))
    R1 = row_reduce(F8, M).rref
    R2 = row_reduce(F8, np.vstack([F8.matmul(T, M), M])).rref
    assert np.array_equal(R1, R2)


def test_fieldspec_equality():
    assert FieldSpec(2, 4, "x^4+x+1", "x") == F16
