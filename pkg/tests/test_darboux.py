import dataclasses
import itertools

import pytest
from gmpy2 import mpq

from xgeg.darboux import (
    SeedSpec,
    build_chain,
    crum_schrodinger_check,
    factorization_check,
    gauge_check,
    partner,
    riccati_residual,
    wronskian_tower,
)
from xgeg.diffop import DiffOp, compose, intertwines
from xgeg.exceptions import DegenerateSeedsError, GaugeError, NotEigenfunctionError
from xgeg.gegenbauer import classical_poly, eigenvalue, xgeg_operator
from xgeg.ratalg import ONE_MINUS_Z2, QuasiRat, RatFunc, Z

T_HALF = xgeg_operator("1/2", 1)


def seed(alpha, i, b=1):
    return SeedSpec(classical_poly(alpha, i), eigenvalue(alpha, i), b)


def test_one_step_example():
    ch = build_chain(T_HALF, [(Z, -2)])
    assert ch.t[1] == DiffOp([RatFunc(Z * Z * -2 - 2, Z * Z), Z * -4, ONE_MINUS_Z2])
    assert ch.upsilon[0] == RatFunc(1, Z) and ch.sigma[0] == 0


def test_empty_chain():
    ch = build_chain(T_HALF, [])
    assert ch.n == 0 and ch.t == (T_HALF,)


def test_two_step_example():
    c2 = classical_poly("1/2", 2)
    ch = build_chain(T_HALF, [(Z, -2), (c2, -6)])
    assert ch.upsilon[1] == RatFunc(Z * Z * 3 + 1).log_deriv()
    assert intertwines(ch.a[1], ch.t[1], ch.t[2])


def test_partner_example():
    ch = build_chain(T_HALF, [(Z, -2)])
    w_hat = RatFunc(-1, Z) + RatFunc(Z * 2, ONE_MINUS_Z2)
    B = partner(ch, 1)
    assert B == DiffOp([-w_hat * ONE_MINUS_Z2, ONE_MINUS_Z2])
    assert compose(B, ch.a[0]) == T_HALF + 2
    assert compose(ch.a[0], B) == ch.t[1] + 2


def test_riccati_and_perturbation():
    ch = build_chain(T_HALF, [(Z, -2)])
    assert riccati_residual(ch, 1).is_zero()
    bumped = dataclasses.replace(ch, seeds=(SeedSpec(Z, -1),))
    assert riccati_residual(bumped, 1) == RatFunc(-1)


def test_index_guard():
    ch = build_chain(T_HALF, [(Z, -2)])
    with pytest.raises(IndexError):
        partner(ch, 2)


def test_not_eigenfunction():
    with pytest.raises(NotEigenfunctionError):
        build_chain(T_HALF, [(Z, -3)])


def test_repeated_eigenvalue():
    with pytest.raises(DegenerateSeedsError):
        build_chain(T_HALF, [(Z, -2), (Z * 2, -2)])


def test_order_check():
    with pytest.raises(ValueError):
        build_chain(DiffOp([0, 1]), [])


@pytest.mark.parametrize(
    "phis, expected",
    [
        ([1, Z], [1, 1]),
        ([Z, (Z * Z * 3 - 1) * mpq(1, 2)], [Z, (Z * Z * 3 + 1) * mpq(1, 2)]),
        ([Z * Z + 1], [Z * Z + 1]),
    ],
)
def test_tower_examples(phis, expected):
    seeds = [SeedSpec(p, k) for k, p in enumerate(phis)]
    assert wronskian_tower(seeds, verify=True) == [QuasiRat(e) for e in expected]


def test_tower_rejects_repeat():
    with pytest.raises(DegenerateSeedsError):
        wronskian_tower([SeedSpec(1, 0), SeedSpec(Z, 0)])


def test_tower_quasi_rational_seeds():
    s = [SeedSpec(QuasiRat(1, mpq(1, 2)), 0), SeedSpec(QuasiRat(Z, mpq(1, 2)), 1)]
    assert wronskian_tower(s, verify=True)[1] == QuasiRat(ONE_MINUS_Z2)


def test_schrodinger():
    ch = build_chain(DiffOp([0, 0, -1]), [(Z, 0)])
    assert ch.t[1] == DiffOp([RatFunc(2, Z * Z), 0, -1])
    assert crum_schrodinger_check(ch)
    assert crum_schrodinger_check(build_chain(DiffOp([0, 0, -1]), []))


def test_schrodinger_guard():
    with pytest.raises(GaugeError):
        crum_schrodinger_check(build_chain(T_HALF, [(Z, -2)]))


@pytest.mark.parametrize("alpha", ["1/2", "3/2"])
@pytest.mark.parametrize("idx", [(1,), (2, 3), (1, 2, 4), (0, 3, 5)])
def test_chain_identities(alpha, idx):
    ch = build_chain(xgeg_operator(alpha, 1), [seed(alpha, i) for i in idx])
    for k in range(1, ch.n + 1):
        assert intertwines(ch.a[k - 1], ch.t[k - 1], ch.t[k])
        assert factorization_check(ch, k)
        assert riccati_residual(ch, k).is_zero()


@pytest.mark.parametrize("alpha", ["1/2", "3/2"])
def test_gauge_conjugation(alpha):
    gs = [Z + 2, Z * Z + 1, RatFunc(1, Z - 3)]
    ch = build_chain(xgeg_operator(alpha, 1), [seed(alpha, i, b) for i, b in zip((1, 2, 3), gs)])
    assert gauge_check(ch)
    for k in range(1, 4):
        assert factorization_check(ch, k)
        assert riccati_residual(ch, k).is_zero()


def test_gauge_independence_for_equal_products():
    t0 = xgeg_operator("3/2", 1)
    a = build_chain(t0, [seed("3/2", 1, Z + 2), seed("3/2", 2, Z * Z + 1)])
    b = build_chain(t0, [seed("3/2", 1, Z * Z + 1), seed("3/2", 2, Z + 2)])
    assert a.t[2] == b.t[2]


def test_permutation_invariance():
    t0 = xgeg_operator("1/2", 1)
    base = [seed("1/2", i) for i in (1, 2, 4)]
    finals = {build_chain(t0, list(p)).t[-1] for p in itertools.permutations(base)}
    assert len(finals) == 1
