import pytest
from gmpy2 import mpq
from hypothesis import given, settings
from hypothesis import strategies as st

from xgeg.exceptions import InadmissibleParametersError
from xgeg.gegenbauer import classical_poly, eigenvalue, norm_nu, rho_classical
from xgeg.ratalg import Poly, RatFunc, Z, sturm_count
from xgeg.xop2 import (
    XGegFamily,
    admissible,
    collapse_duplicates,
    degrees,
    det,
    eigencheck,
    family_recursive,
    intertwine_check,
    norm,
    positivity_verify,
    q_tuple,
    r_matrix,
    rho_deformed,
    rho_derivative_check,
    tau_matrix,
    threshold,
    xpoly_matrix,
)

NU4 = mpq(60, 11)


class TestMatrix:
    def test_empty(self):
        assert r_matrix("1/2", (), ()) == []
        assert tau_matrix("1/2", (), ()) == Poly([1])

    def test_singleton(self):
        assert r_matrix("1/2", [0], [1]) == [[Z + 2]]
        assert tau_matrix("1/2", [0], ["5/3"]) == (Z + 1) * mpq(5, 3) + 1

    def test_pair(self):
        R = r_matrix("1/2", [0, 1], [1, 1])
        off = (Z * Z - 1) * mpq(1, 2)
        assert R == [[Z + 2, off], [off, (Z ** 3 + 1) * mpq(1, 3) + 1]]

    def test_identity_at_minus_one(self):
        R = r_matrix("5/2", [1, 3, 4], [2, "1/3", -1])
        assert [[x(-1) for x in row] for row in R] == [[1, 0, 0], [0, 1, 0], [0, 0, 1]]

    def test_det_against_cofactor(self):
        M = [[Z + 1, Z * Z, Poly([3])], [Poly([0]), Z - 2, Z], [Z * Z * Z, Poly([1]), Z + 5]]
        cof = (
            M[0][0] * (M[1][1] * M[2][2] - M[1][2] * M[2][1])
            - M[0][1] * (M[1][0] * M[2][2] - M[1][2] * M[2][0])
            + M[0][2] * (M[1][0] * M[2][1] - M[1][1] * M[2][0])
        )
        assert det(M) == cof

    def test_det_needs_pivoting(self):
        assert det([[Poly(), Poly([1])], [Poly([1]), Poly()]]) == Poly([-1])

    def test_zero_parameters(self):
        assert tau_matrix("3/2", [1, 2], [0, 0]) == Poly([1])
        assert q_tuple("3/2", [1, 2], [0, 0]) == (classical_poly("3/2", 1), classical_poly("3/2", 2))

    def test_tau_degree_example(self):
        assert tau_matrix("1/2", [0], ["7"]).degree == 1
        assert tau_matrix("3/2", [4], ["2/5"]).degree == 11

    def test_q_tuple_singleton(self):
        assert q_tuple("3/2", [3], ["4"]) == (classical_poly("3/2", 3),)

    def test_q_tuple_pair(self):
        Q = q_tuple("1/2", [0, 1], [1, 0])
        assert Q[1] == (Z + 2) * Z - (Z * Z - 1) * mpq(1, 2)

    def test_q_tuple_solves_system(self):
        m, t = (1, 3), ("1/2", "2")
        R = r_matrix("3/2", m, t)
        Q = q_tuple("3/2", m, t)
        tau = tau_matrix("3/2", m, t)
        for k in range(2):
            assert R[k][0] * Q[0] + R[k][1] * Q[1] == tau * classical_poly("3/2", m[k])


class TestXPoly:
    def test_zero_t(self):
        for i in range(6):
            assert xpoly_matrix("3/2", [4], [0], i) == classical_poly("3/2", i)

    def test_index_in_tuple(self):
        assert xpoly_matrix("3/2", [4], ["1/2"], 4) == classical_poly("3/2", 4)
        assert xpoly_matrix("3/2", [1, 4], ["1/2", 3], 4) == xpoly_matrix("3/2", [1], ["1/2"], 4)

    @pytest.mark.parametrize("i", [0, 2, 3, 7])
    def test_slot_independence(self, i):
        a = xpoly_matrix("5/2", [1, 4], ["1/2", 3], i, slot_t=0)
        b = xpoly_matrix("5/2", [1, 4], ["1/2", 3], i, slot_t="-17/5")
        assert a == b

    def test_one_step_formula(self):
        t = mpq(3, 7)
        for i in range(6):
            got = xpoly_matrix("3/2", [2], [t], i)
            rho = lambda a, b: rho_classical("3/2", a, b)  # noqa: E731
            want = (rho(2, 2) * t + 1) * classical_poly("3/2", i) - rho(i, 2) * classical_poly("3/2", 2) * t
            assert got == want


class TestRecursion:
    def test_one_step(self):
        rec = family_recursive("3/2", [2], ["3/7"])
        t = mpq(3, 7)
        assert rec.tau() == rho_classical("3/2", 2, 2) * t + 1

    def test_zero_t_classical(self):
        rec = family_recursive("1/2", [0, 3], [0, 0])
        assert rec.tau() == Poly([1])
        assert all(rec.xpoly(i) == classical_poly("1/2", i) for i in range(6))

    def test_pair_example(self):
        rec = family_recursive("1/2", [0, 1], [1, 1])
        assert rec.tau() == tau_matrix("1/2", [0, 1], [1, 1])

    @settings(max_examples=15, deadline=None)
    @given(
        st.sampled_from(["1/2", "3/2", "5/2"]),
        st.lists(st.integers(0, 4), min_size=1, max_size=3, unique=True),
        st.lists(st.fractions(min_value=0, max_value=4, max_denominator=5), min_size=3, max_size=3),
    )
    def test_equivalence(self, alpha, m, t):
        t = t[: len(m)]
        fam = XGegFamily(alpha, m, t)
        rec = family_recursive(alpha, m, t)
        assert fam.tau == rec.tau()
        for i in range(7):
            assert fam.xpoly(i) == rec.xpoly(i)


class TestRho:
    def test_no_steps(self):
        fam = XGegFamily("3/2", (), ())
        assert rho_deformed(fam, 1, 2) == RatFunc(rho_classical("3/2", 1, 2))

    def test_diagonal_value(self):
        t = mpq(1, 2)
        fam = XGegFamily("3/2", [4], [t])
        assert rho_deformed(fam, 4, 4)(1) == NU4 / (1 + t * NU4)
        assert rho_deformed(fam, 4, 4)(-1) == 0

    def test_off_diagonal(self):
        fam = XGegFamily("3/2", [4], ["1/2"])
        assert rho_deformed(fam, 1, 2)(1) == 0
        assert rho_deformed(fam, 1, 4)(1) == 0

    @pytest.mark.parametrize("i, j", [(0, 0), (0, 3), (2, 4), (4, 4), (5, 1)])
    def test_derivative_identity(self, i, j):
        assert rho_derivative_check(XGegFamily("5/2", [1, 4], ["1/2", 3]), i, j)


class TestNorms:
    def test_unchanged_outside(self):
        fam = XGegFamily("3/2", [4], ["1/2"])
        for i in (0, 1, 2, 3, 5, 6):
            assert norm(fam, i) == norm_nu("3/2", i)

    def test_changed_inside(self):
        assert norm(XGegFamily("3/2", [4], ["1/2"]), 4) == mpq(60, 41)

    def test_zero_t(self):
        assert norm(XGegFamily("1/2", [2], [0]), 2) == norm_nu("1/2", 2)

    def test_inadmissible(self):
        fam = XGegFamily("3/2", [4], [threshold("3/2", 4) - mpq(1, 1000)])
        with pytest.raises(InadmissibleParametersError, match="-11/60"):
            norm(fam, 4)


class TestPositivity:
    def test_threshold(self):
        assert threshold("3/2", 4) == mpq(-11, 60)

    def test_just_above(self):
        t = mpq(-11, 60) + mpq(1, 1000)
        fam = XGegFamily("3/2", [4], [t])
        assert admissible("3/2", [4], [t])
        assert sturm_count(fam.tau, -1, 1, closed=True) == 0
        assert positivity_verify(fam)

    def test_just_below(self):
        t = mpq(-11, 60) - mpq(1, 1000)
        fam = XGegFamily("3/2", [4], [t])
        assert not admissible("3/2", [4], [t])
        assert sturm_count(fam.tau, -1, 1, closed=True) >= 1
        assert not positivity_verify(fam)

    def test_boundary_is_inadmissible(self):
        fam = XGegFamily("3/2", [4], [mpq(-11, 60)])
        assert fam.tau(1) == 0
        assert not fam.is_admissible()
        assert not positivity_verify(fam)

    def test_zero(self):
        fam = XGegFamily("3/2", [4], [0])
        assert fam.tau == Poly([1]) and positivity_verify(fam)


class TestEigen:
    def test_example(self):
        fam = XGegFamily("3/2", [4], ["1/2"])
        assert eigenvalue("3/2", 1) == -4
        assert eigencheck(fam, 1) and eigencheck(fam, 1, via_operator=True)

    def test_index_in_tuple(self):
        fam = XGegFamily("3/2", [4], ["1/2"])
        assert eigencheck(fam, 4, via_operator=True)

    def test_wrong_polynomial_fails(self):
        fam = XGegFamily("3/2", [4], ["1/2"])
        fam._xp[2] = classical_poly("3/2", 2)
        assert not eigencheck(fam, 2)
        assert not eigencheck(fam, 2, via_operator=True)


class TestIntertwine:
    def test_simple(self):
        assert intertwine_check(XGegFamily("1/2", [0], [1]), imax=3)

    def test_zero_t(self):
        assert intertwine_check(XGegFamily("3/2", [2], [0]), imax=4)

    def test_nested(self):
        assert intertwine_check(XGegFamily("3/2", [1, 3], ["1/2", 2]), imax=4)


class TestSymmetry:
    def test_collapse(self):
        assert collapse_duplicates([4, 4], ["1/3", "1/6"]) == ((4,), (mpq(1, 2),))
        assert collapse_duplicates([0, 1], [2, 3]) == ((0, 1), (2, 3))
        assert collapse_duplicates([1, 0], [3, 2]) == ((0, 1), (2, 3))

    def test_duplicates_raw(self):
        assert tau_matrix("3/2", [4, 4], ["1/3", "1/6"], canonical=False) == tau_matrix("3/2", [4], ["1/2"])
        for i in range(6):
            raw = xpoly_matrix("3/2", [2, 4, 4], [1, "1/3", "1/6"], i, canonical=False)
            assert raw == xpoly_matrix("3/2", [2, 4], [1, "1/2"], i)

    def test_permutations_raw(self):
        m, t = (0, 2, 3), (1, "1/2", 4)
        base_tau = tau_matrix("1/2", m, t, canonical=False)
        base = [xpoly_matrix("1/2", m, t, i, canonical=False) for i in range(5)]
        for perm in [(2, 0, 1), (1, 2, 0), (0, 2, 1)]:
            pm, pt = [m[k] for k in perm], [t[k] for k in perm]
            assert tau_matrix("1/2", pm, pt, canonical=False) == base_tau
            assert [xpoly_matrix("1/2", pm, pt, i, canonical=False) for i in range(5)] == base

    def test_family_identity(self):
        assert XGegFamily("1/2", [3, 1], [1, 2]) == XGegFamily("1/2", [1, 3], [2, 1])

    def test_length_mismatch(self):
        with pytest.raises(ValueError):
            XGegFamily("1/2", [1, 2], [1])


class TestDegrees:
    def test_examples(self):
        fam = XGegFamily("3/2", [4], ["1/2"])
        assert degrees(fam, 0) == (11, 11)
        assert degrees(fam, 4) == (11, 4)
        assert degrees(fam, 2) == (11, 13)

    def test_inactive_index(self):
        assert degrees(XGegFamily("3/2", [4], [0]), 4) == (0, 4)
