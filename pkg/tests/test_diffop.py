import pytest
from gmpy2 import mpq
from hypothesis import given, settings
from hypothesis import strategies as st

from xgeg.diffop import D, DiffOp, apply, compose, conjugate, intertwines
from xgeg.gegenbauer import a_operator, b_operator, xgeg_operator
from xgeg.ratalg import ONE_MINUS_Z2, Poly, QuasiRat, RatFunc, Z

T_HALF = DiffOp([0, Z * -2, ONE_MINUS_Z2])

coef = st.builds(
    lambda n, d: RatFunc(Poly(n), Poly(d) * Poly(d) + 1),
    st.lists(st.integers(-3, 3), max_size=3),
    st.lists(st.integers(-3, 3), max_size=2),
)
ops = st.lists(coef, min_size=1, max_size=3).map(DiffOp)
funcs = st.builds(
    lambda n, e2: QuasiRat(Poly(n), mpq(e2, 2)),
    st.lists(st.integers(-3, 3), min_size=1, max_size=4),
    st.sampled_from([-1, 1, 3]),
)
gauges = st.builds(
    lambda n, e2: QuasiRat(Poly(n) * Poly(n) + 1, e2),
    st.lists(st.integers(-2, 2), max_size=3),
    st.sampled_from([0, mpq(1, 2), -1]),
)


def test_apply_examples():
    assert apply(T_HALF, Z) == QuasiRat(Z * -2)
    assert apply(D, QuasiRat(1, mpq(1, 2))) == QuasiRat(-Z, mpq(-1, 2))
    f = QuasiRat(Z + 3, mpq(-3, 2))
    assert apply(DiffOp.identity(), f) == f


def test_compose_examples():
    assert compose(D, D) == DiffOp([0, 0, 1])
    assert compose(D, DiffOp.mult(Z)) == DiffOp([1, Z])
    b = b_operator("1/2", Z, 1)
    a = a_operator(1, Z)
    assert compose(b, a) == DiffOp([2, Z * -2, ONE_MINUS_Z2])


def test_conjugate_examples():
    assert conjugate(D, QuasiRat(Z)) == DiffOp([RatFunc(-1, Z), 1])
    assert conjugate(compose(D, D), QuasiRat(Z)) == DiffOp([RatFunc(2, Z * Z), RatFunc(-2, Z), 1])
    assert conjugate(T_HALF, QuasiRat(1)) == T_HALF


def test_intertwines_examples():
    d2 = DiffOp([0, 0, 1])
    assert intertwines(D, d2, d2)
    a = DiffOp([RatFunc(-1, Z), 1])
    t2 = DiffOp([RatFunc(Z * Z * -2 - 2, Z * Z), Z * -4, ONE_MINUS_Z2])
    assert intertwines(a, T_HALF, t2)
    assert not intertwines(D, d2, DiffOp([1, 0, 1]))


def test_printer():
    assert str(T_HALF) == "(1-z^2)*D^2 + (-2*z)*D^1 + (0)"


def test_equality_with_function():
    assert DiffOp.mult(Z) == Z
    assert DiffOp([0]) == DiffOp()


@settings(max_examples=40, deadline=None)
@given(ops, ops, funcs)
def test_apply_compose_consistent(a, b, f):
    assert apply(compose(a, b), f) == apply(a, apply(b, f))


@settings(max_examples=30, deadline=None)
@given(ops, ops, gauges)
def test_conjugation_homomorphism(a, b, s):
    assert conjugate(compose(a, b), s) == compose(conjugate(a, s), conjugate(b, s))


@settings(max_examples=30, deadline=None)
@given(ops, gauges)
def test_conjugation_inverse(a, s):
    assert conjugate(conjugate(a, s), s.inverse()) == a


@settings(max_examples=30, deadline=None)
@given(ops, gauges, funcs)
def test_conjugation_matches_definition(a, s, f):
    # s a s^-1 applied to f
    assert apply(conjugate(a, s), f) == s * apply(a, f / s)


def test_conjugate_by_zero():
    with pytest.raises(ZeroDivisionError):
        conjugate(D, QuasiRat(0))


def test_operator_family_reduces():
    assert xgeg_operator("1/2", 1) == T_HALF
