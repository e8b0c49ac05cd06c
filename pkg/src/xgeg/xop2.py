"""Exceptional Gegenbauer polynomials of the second kind.

Two independent constructions are provided.  The matrix route builds
``R_kl = delta_kl + t_l rho_{m_k m_l}``, takes ``tau = det R`` and reads the
polynomials off Cramer's rule.  The recursive route applies one confluent
Darboux step per index.  :class:`XGegFamily` wraps both together with the
identities the family must satisfy.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

from gmpy2 import mpq

from .diffop import DiffOp, apply, compose, intertwines
from .exceptions import ConsistencyError, InadmissibleParametersError
from .gegenbauer import (
    HalfInt,
    a_operator,
    b_operator,
    classical_poly,
    eigenvalue,
    norm_nu,
    rho_classical,
    weight_poly,
    xgeg_operator,
)
from .ratalg import Poly, QuasiRat, RatFunc, rat, rat_to_str, sturm_count

__all__ = [
    "collapse_duplicates",
    "threshold",
    "r_matrix",
    "det",
    "tau_matrix",
    "q_tuple",
    "xpoly_matrix",
    "CDTRecursion",
    "family_recursive",
    "XGegFamily",
    "rho_deformed",
    "norm",
    "admissible",
    "positivity_verify",
    "eigencheck",
    "intertwine_check",
    "cdt_step_check",
    "degrees",
    "rho_derivative_check",
]


def _as_pairs(m, t) -> tuple[tuple[int, ...], tuple[mpq, ...]]:
    m = tuple(int(x) for x in m)
    t = tuple(rat(x) for x in t)
    if len(m) != len(t):
        raise ValueError(f"index tuple has {len(m)} entries but {len(t)} parameters")
    if any(x < 0 for x in m):
        raise ValueError(f"indices must be non-negative, got {m}")
    return m, t


def collapse_duplicates(m: Sequence[int], t: Sequence) -> tuple[tuple[int, ...], tuple[mpq, ...]]:
    """Merge repeated indices by adding their parameters, then sort ascending."""
    m, t = _as_pairs(m, t)
    acc: dict[int, mpq] = {}
    for mi, ti in zip(m, t):
        acc[mi] = acc.get(mi, mpq(0)) + ti
    keys = sorted(acc)
    return tuple(keys), tuple(acc[k] for k in keys)


def threshold(alpha, mj: int) -> mpq:
    """Lower bound ``-1/nu_mj`` on the parameter attached to index ``mj``."""
    return -1 / norm_nu(alpha, mj)


# -- matrix construction ---------------------------------------------------


def r_matrix(alpha, m, t, canonical: bool = True) -> list[list[Poly]]:
    a = HalfInt.of(alpha)
    m, t = collapse_duplicates(m, t) if canonical else _as_pairs(m, t)
    n = len(m)
    return [
        [
            rho_classical(a, m[k], m[l]) * t[l] + (1 if k == l else 0)
            for l in range(n)
        ]
        for k in range(n)
    ]


def det(mat: Sequence[Sequence[Poly]]) -> Poly:
    """Fraction-free (Bareiss) determinant of a square matrix of polynomials."""
    n = len(mat)
    if n == 0:
        return Poly.const(1)
    a = [[Poly.coerce(x) for x in row] for row in mat]
    if any(len(row) != n for row in a):
        raise ValueError("matrix is not square")
    sign = 1
    prev = Poly.const(1)
    for k in range(n - 1):
        if a[k][k].is_zero():
            swap = next((r for r in range(k + 1, n) if not a[r][k].is_zero()), None)
            if swap is None:
                return Poly()
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        piv = a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * piv - a[i][k] * a[k][j]).exact_div(prev)
        prev = piv
    return a[n - 1][n - 1] * sign


def _minor(mat, row: int, col: int):
    return [[x for j, x in enumerate(r) if j != col] for i, r in enumerate(mat) if i != row]


def tau_matrix(alpha, m, t, canonical: bool = True) -> Poly:
    """``det R`` for the (canonicalized) tuple."""
    return det(r_matrix(alpha, m, t, canonical))


def q_tuple(alpha, m, t, canonical: bool = True) -> tuple[Poly, ...]:
    """``adj(R) (C_m1, ..., C_mn)``; polynomial entries with no division."""
    a = HalfInt.of(alpha)
    m, t = collapse_duplicates(m, t) if canonical else _as_pairs(m, t)
    R = r_matrix(a, m, t, canonical=False)
    c = [classical_poly(a, x) for x in m]
    n = len(m)
    out = []
    for i in range(n):
        acc = Poly()
        for j in range(n):
            # adj[i][j] is the (j, i) cofactor
            cof = det(_minor(R, j, i))
            acc = acc + (cof * c[j] if (i + j) % 2 == 0 else -(cof * c[j]))
        out.append(acc)
    return tuple(out)


def xpoly_matrix(alpha, m, t, i: int, slot_t=0, canonical: bool = True) -> Poly:
    """Last entry of the Q-tuple of ``(m, i)``.

    The parameter placed in the extra slot is ``slot_t``; it only enters the
    last column of ``R`` and so drops out.  Indices equal to ``i`` are removed
    before the extension.
    """
    a = HalfInt.of(alpha)
    m, t = collapse_duplicates(m, t) if canonical else _as_pairs(m, t)
    if i < 0:
        raise ValueError("negative index")
    keep = [(x, y) for x, y in zip(m, t) if x != i]
    mm = tuple(x for x, _ in keep) + (i,)
    tt = tuple(y for _, y in keep) + (rat(slot_t),)
    R = r_matrix(a, mm, tt, canonical=False)
    last = len(mm) - 1
    # Cramer: replace the last column by the classical polynomials
    for k, x in enumerate(mm):
        R[k][last] = classical_poly(a, x)
    return det(R)


# -- recursive construction ------------------------------------------------


class CDTRecursion:
    """Objects after ``j`` confluent steps, built on demand.

    ``tau(j)`` and ``pi(j, i)`` are polynomials, ``rho(j, i1, i2)`` rational.
    """

    def __init__(self, alpha, m, t):
        self.alpha = HalfInt.of(alpha)
        self.m, self.t = _as_pairs(m, t)
        self._rho: dict = {}
        self._pi: dict = {}
        self._tau: dict = {0: Poly.const(1)}
        self._lock = threading.Lock()

    @property
    def n(self) -> int:
        return len(self.m)

    def _store(self, table, key, value):
        with self._lock:
            return table.setdefault(key, value)

    def _factor(self, j: int) -> RatFunc:
        mj, tj = self.m[j - 1], self.t[j - 1]
        return self.rho(j - 1, mj, mj) * tj + 1

    def rho(self, j: int, i1: int, i2: int) -> RatFunc:
        key = (j, min(i1, i2), max(i1, i2))
        v = self._rho.get(key)
        if v is not None:
            return v
        if j == 0:
            v = RatFunc(rho_classical(self.alpha, i1, i2))
        else:
            mj, tj = self.m[j - 1], self.t[j - 1]
            v = self.rho(j - 1, i1, i2)
            if tj:
                v = v - self.rho(j - 1, i1, mj) * self.rho(j - 1, i2, mj) * tj / self._factor(j)
        return self._store(self._rho, key, v)

    def tau(self, j: int | None = None) -> Poly:
        j = self.n if j is None else j
        v = self._tau.get(j)
        if v is None:
            v = _polynomial(self._factor(j) * self.tau(j - 1), f"tau after step {j}")
            v = self._store(self._tau, j, v)
        return v

    def pi(self, j: int, i: int) -> Poly:
        key = (j, i)
        v = self._pi.get(key)
        if v is not None:
            return v
        if j == 0:
            v = classical_poly(self.alpha, i)
        else:
            mj, tj = self.m[j - 1], self.t[j - 1]
            v = self._factor(j) * self.pi(j - 1, i) - self.rho(j - 1, i, mj) * self.pi(j - 1, mj) * tj
            v = _polynomial(v, f"pi_{i} after step {j}")
        return self._store(self._pi, key, v)

    def xpoly(self, i: int) -> Poly:
        return self.pi(self.n, i)


def _polynomial(f: RatFunc, what: str) -> Poly:
    if not f.is_poly():
        raise ConsistencyError(f"{what} is not a polynomial: {f}")
    return f.as_poly()


def family_recursive(alpha, m, t, canonical: bool = True) -> CDTRecursion:
    """Recursive construction seeded at the classical objects."""
    m, t = collapse_duplicates(m, t) if canonical else _as_pairs(m, t)
    return CDTRecursion(alpha, m, t)


# -- the family ------------------------------------------------------------


@dataclass(frozen=True)
class _Key:
    alpha: HalfInt
    m: tuple
    t: tuple


class XGegFamily:
    """Exceptional Gegenbauer family for ``(alpha, m, t)``, canonicalized on entry.

    ``tau`` and the polynomials come from the matrix construction; rho and
    norms from the recursion.  All tables are lazy.
    """

    def __init__(self, alpha, m=(), t=()):
        a = HalfInt.of(alpha)
        m, t = collapse_duplicates(m, t)
        self.key = _Key(a, m, t)
        self._xp: dict[int, Poly] = {}
        self._lock = threading.Lock()

    alpha = property(lambda self: self.key.alpha)
    m = property(lambda self: self.key.m)
    t = property(lambda self: self.key.t)

    @property
    def n(self) -> int:
        return len(self.m)

    @property
    def active(self) -> tuple[int, ...]:
        """Indices whose parameter is non-zero."""
        return tuple(x for x, y in zip(self.m, self.t) if y)

    def __eq__(self, other) -> bool:
        return isinstance(other, XGegFamily) and self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    def __repr__(self) -> str:
        ts = ",".join(rat_to_str(x) for x in self.t)
        return f"XGegFamily(alpha={self.alpha}, m={self.m}, t=({ts}))"

    @cached_property
    def tau(self) -> Poly:
        return tau_matrix(self.alpha, self.m, self.t)

    @cached_property
    def recursion(self) -> CDTRecursion:
        return CDTRecursion(self.alpha, self.m, self.t)

    @cached_property
    def operator(self) -> DiffOp:
        return xgeg_operator(self.alpha, self.tau)

    @cached_property
    def weight(self) -> RatFunc:
        """``(1-z^2)^(alpha-1/2) / tau^2``."""
        return RatFunc(weight_poly(self.alpha), self.tau * self.tau)

    def xpoly(self, i: int) -> Poly:
        p = self._xp.get(i)
        if p is None:
            p = xpoly_matrix(self.alpha, self.m, self.t, i)
            with self._lock:
                p = self._xp.setdefault(i, p)
        return p

    def thresholds(self) -> tuple[mpq, ...]:
        return tuple(threshold(self.alpha, x) for x in self.m)

    def violations(self) -> list[tuple[int, mpq, mpq]]:
        """``(m_j, t_j, -1/nu_mj)`` for every parameter at or below its bound."""
        return [(x, y, b) for x, y, b in zip(self.m, self.t, self.thresholds()) if not y > b]

    def is_admissible(self) -> bool:
        return not self.violations()


def rho_deformed(family: XGegFamily, i: int, j: int) -> RatFunc:
    return family.recursion.rho(family.n, i, j)


def rho_derivative_check(family: XGegFamily, i: int, j: int) -> bool:
    """``d/dz rho_{m;ij} == C_{m;i} C_{m;j} W_tau``."""
    lhs = rho_deformed(family, i, j).deriv()
    return lhs == family.weight * (family.xpoly(i) * family.xpoly(j))


def admissible(alpha, m, t) -> bool:
    return XGegFamily(alpha, m, t).is_admissible()


def _inadmissible_message(family: XGegFamily) -> str:
    parts = [
        f"t_{x} = {rat_to_str(y)} must exceed -1/nu_{x} = {rat_to_str(b)}"
        for x, y, b in family.violations()
    ]
    return "norm undefined (weight not positive): " + "; ".join(parts)


def norm(family: XGegFamily, i: int) -> mpq:
    """``rho_{m;ii}(1)``, checked against ``nu_i / (1 + delta t_i nu_i)``."""
    if not family.is_admissible():
        raise InadmissibleParametersError(_inadmissible_message(family))
    nu = norm_nu(family.alpha, i)
    ti = dict(zip(family.m, family.t)).get(i, mpq(0))
    closed = nu / (1 + ti * nu)
    value = rho_deformed(family, i, i)(1)
    if value != closed:
        raise ConsistencyError(f"norm {i}: rho(1) = {value} but closed form gives {closed}")
    return value


def positivity_verify(family: XGegFamily) -> bool:
    """Sturm count of ``tau`` on [-1, 1] against the parameter thresholds."""
    tau = family.tau
    if tau(-1) != 1:
        raise ConsistencyError(f"tau(-1) = {tau(-1)}, expected 1")
    positive = sturm_count(tau, -1, 1, closed=True) == 0
    if positive != family.is_admissible():
        raise ConsistencyError(
            f"{family}: Sturm says positive={positive}, thresholds say admissible={family.is_admissible()}"
        )
    return positive


def eigencheck(family: XGegFamily, i: int, via_operator: bool = False) -> bool:
    """``T_tau C_{m;i} == lambda_i C_{m;i}``.

    The default path clears the ``tau`` denominator and compares polynomials;
    ``via_operator`` applies the rational operator instead.
    """
    y = family.xpoly(i)
    lam = eigenvalue(family.alpha, i)
    if via_operator:
        return family.operator(y) == QuasiRat(y * lam)
    two_a = family.alpha.two_alpha
    tau = family.tau
    dt, d2t = tau.deriv(), tau.deriv(2)
    dy, d2y = y.deriv(), y.deriv(2)
    one_m = Poly([1, 0, -1])
    z = Poly([0, 1])
    lhs = (
        one_m * (tau * d2y - dt * dy * 2 + d2t * y)
        - z * tau * dy * (two_a + 1)
        + z * dt * y * (two_a - 1)
    )
    return lhs == tau * y * lam


def degrees(family: XGegFamily, i: int) -> tuple[int, int]:
    """Degree formulas for ``tau`` and ``C_{m;i}``, asserted against the actual degrees.

    Parameters equal to zero switch their index off, so only active indices
    enter the formulas.
    """
    act = family.active
    two_a = family.alpha.two_alpha
    d_tau = 2 * sum(act) + two_a * len(act)
    d_x = d_tau + i - (2 * i + two_a if i in act else 0)
    got_tau, got_x = family.tau.degree, family.xpoly(i).degree
    if (got_tau, got_x) != (d_tau, d_x):
        raise ConsistencyError(
            f"{family}, i={i}: formula degrees ({d_tau}, {d_x}) but computed ({got_tau}, {got_x})"
        )
    d = d_x - d_tau
    if -d * (two_a + d) != eigenvalue(family.alpha, i):
        raise ConsistencyError(f"{family}, i={i}: degree shift {d} inconsistent with eigenvalue")
    return d_tau, d_x


def cdt_step_check(alpha, tau, pi, pi_m, m: int, tau_m, pi_m_of, indices) -> bool:
    """One confluent step from ``T_tau`` with eigenpolynomials ``pi(i)`` to ``T_tau_m``.

    ``pi_m_of(i)`` gives the new polynomials.  Verified: both intertwinings through
    the middle operator, both factorizations at the new tau, and
    ``A_2 A_1 pi_i = (lam_i - lam_m) pi_{m;i}`` with its image under ``T_0``.
    """
    a = HalfInt.of(alpha)
    lam_m = eigenvalue(a, m)
    t0 = xgeg_operator(a, tau)
    t1 = xgeg_operator(a.shift(), pi_m) - (a.two_alpha + 1)
    t2 = xgeg_operator(a, tau_m)
    a1 = a_operator(tau, pi_m)
    a2 = b_operator(a, pi_m, tau_m)
    if not (intertwines(a1, t0, t1) and intertwines(a2, t1, t2)):
        return False
    # factorizations at the new tau, with pi_m as the kernel of A_{tau_m pi_m}
    fa = a_operator(tau_m, pi_m)
    if compose(a2, fa) != t2 - lam_m:
        return False
    if compose(fa, a2) != t1 - lam_m:
        return False
    a21 = compose(a2, a1)
    if not apply(a1, pi_m).is_zero():
        return False
    for i in indices:
        if i == m:
            continue
        lam_i = eigenvalue(a, i)
        target = QuasiRat(pi_m_of(i) * (lam_i - lam_m))
        src = pi(i)
        if apply(a21, src) != target:
            return False
        if apply(a21, apply(t0, src)) != target * QuasiRat(lam_i):
            return False
    return True


def intertwine_check(family: XGegFamily, imax: int = 6) -> bool:
    """Check every confluent step of ``family`` along the recursion, ``i <= imax``."""
    rec = family.recursion
    idx = range(imax + 1)
    for j in range(1, family.n + 1):
        mj = family.m[j - 1]
        ok = cdt_step_check(
            family.alpha,
            rec.tau(j - 1),
            lambda i, j=j: rec.pi(j - 1, i),
            rec.pi(j - 1, mj),
            mj,
            rec.tau(j),
            lambda i, j=j: rec.pi(j, i),
            idx,
        )
        if not ok:
            return False
    return True
