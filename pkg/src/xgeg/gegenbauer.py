"""Classical Gegenbauer polynomials at half-integer alpha, and the
exceptional Gegenbauer operator family ``T_tau`` with its factorizations."""

from __future__ import annotations

import threading
from dataclasses import dataclass
from functools import lru_cache
from math import factorial

from gmpy2 import mpq

from .diffop import DiffOp, compose
from .exceptions import ConsistencyError
from .ratalg import (
    ONE_MINUS_Z2,
    Poly,
    QuasiRat,
    RatFunc,
    Z,
    poly_antideriv_from,
    rat,
    wronskian2,
)

__all__ = [
    "HalfInt",
    "ClassicalTable",
    "table",
    "eigenvalue",
    "classical_poly",
    "weight_poly",
    "rho_classical",
    "norm_nu",
    "norm_nu_closed_form",
    "xgeg_operator",
    "a_operator",
    "b_operator",
    "wronskian_operator",
    "pi_hat",
    "tau_hat",
    "lagrange_check",
    "dual_eigen_residual",
]


@dataclass(frozen=True, order=True)
class HalfInt:
    """alpha = k + 1/2 with k a non-negative integer."""

    k: int

    def __post_init__(self):
        if not isinstance(self.k, int) or self.k < 0:
            raise ValueError(f"HalfInt needs a non-negative integer k, got {self.k!r}")

    @classmethod
    def of(cls, alpha) -> "HalfInt":
        if isinstance(alpha, HalfInt):
            return alpha
        a = rat(alpha)
        if (2 * a).denominator != 1 or (2 * a) % 2 != 1 or a < 0:
            raise ValueError(f"alpha must lie in N_0 + 1/2, got {alpha!r}")
        return cls(int(a - mpq(1, 2)))

    @property
    def value(self) -> mpq:
        return mpq(2 * self.k + 1, 2)

    @property
    def two_alpha(self) -> int:
        return 2 * self.k + 1

    def shift(self, n: int = 1) -> "HalfInt":
        return HalfInt(self.k + n)

    def __str__(self) -> str:
        return f"{2 * self.k + 1}/2"


def eigenvalue(alpha, i: int) -> mpq:
    """-i (2 alpha + i)."""
    a = HalfInt.of(alpha)
    return mpq(-i * (a.two_alpha + i))


def _rising(a: mpq, n: int) -> mpq:
    out = mpq(1)
    for j in range(n):
        out *= a + j
    return out


def _gamma_half(x) -> tuple[mpq, int]:
    """Gamma(x) for x in N or N_0 + 1/2, as (c, e) meaning c * pi**(e/2)."""
    x = rat(x)
    if x.denominator == 1:
        if x <= 0:
            raise ValueError("Gamma pole")
        return mpq(factorial(int(x) - 1)), 0
    if x.denominator != 2 or x < 0:
        raise ValueError(f"Gamma({x}) is not handled exactly")
    # Gamma(1/2) = sqrt(pi); Gamma(x + 1) = x Gamma(x)
    return _rising(mpq(1, 2), int(x - mpq(1, 2))), 1


class ClassicalTable:
    """Memo of C_i, rho_ij and nu_i for one alpha.

    Concurrent builders may race on the same key; they compute equal values, and
    the lock only guards dictionary insertion.
    """

    def __init__(self, alpha):
        self.alpha = HalfInt.of(alpha)
        self._polys: dict[int, Poly] = {}
        self._rho: dict[tuple[int, int], Poly] = {}
        self._nu: dict[int, mpq] = {}
        self._lock = threading.Lock()
        self.weight = ONE_MINUS_Z2 ** self.alpha.k

    def poly(self, i: int) -> Poly:
        if i < 0:
            raise ValueError("negative degree")
        p = self._polys.get(i)
        if p is None:
            a = self.alpha.value
            c = [mpq(0)] * (i + 1)
            for k in range(i // 2 + 1):
                # Gamma(i - k + alpha) / Gamma(alpha) is a rising factorial
                coef = _rising(a, i - k) / (factorial(k) * factorial(i - 2 * k)) * 2 ** (i - 2 * k)
                c[i - 2 * k] = -coef if k % 2 else coef
            p = Poly(c)
            with self._lock:
                self._polys.setdefault(i, p)
        return p

    def rho(self, i: int, j: int) -> Poly:
        key = (min(i, j), max(i, j))
        r = self._rho.get(key)
        if r is None:
            r = poly_antideriv_from(self.poly(i) * self.poly(j) * self.weight, -1)
            with self._lock:
                self._rho.setdefault(key, r)
        return r

    def nu(self, i: int) -> mpq:
        v = self._nu.get(i)
        if v is None:
            v = norm_nu_closed_form(self.alpha, i)
            from_rho = self.rho(i, i)(1)
            if v != from_rho:
                raise ConsistencyError(
                    f"nu_{i} closed form {v} != rho_{i}{i}(1) = {from_rho} at alpha={self.alpha}"
                )
            with self._lock:
                self._nu.setdefault(i, v)
        return v


@lru_cache(maxsize=None)
def table(alpha) -> ClassicalTable:
    return ClassicalTable(HalfInt.of(alpha))


def classical_poly(alpha, i: int) -> Poly:
    """C^(alpha)_i with exact coefficients."""
    return table(HalfInt.of(alpha)).poly(i)


def weight_poly(alpha) -> Poly:
    """(1 - z^2)^(alpha - 1/2), a polynomial for half-integer alpha."""
    return table(HalfInt.of(alpha)).weight


def rho_classical(alpha, i: int, j: int) -> Poly:
    """Antiderivative of C_i C_j W vanishing at z = -1."""
    return table(HalfInt.of(alpha)).rho(i, j)


def norm_nu_closed_form(alpha, i: int) -> mpq:
    a = HalfInt.of(alpha)
    g_num, e_num = _gamma_half(i + a.two_alpha)
    g_a, e_a = _gamma_half(a.value)
    # pi * 2^(1-2a) Gamma(i+2a) / (i! (i+a) Gamma(a)^2)
    pi_power = 2 + e_num - 2 * e_a
    if pi_power != 0:
        raise ConsistencyError(f"pi does not cancel in nu_{i} (power {pi_power}/2)")
    return mpq(2) ** (1 - a.two_alpha) * g_num / (factorial(i) * (i + a.value) * g_a ** 2)


def norm_nu(alpha, i: int) -> mpq:
    """nu_i = int C_i^2 W; the closed form is checked against rho_ii(1)."""
    return table(HalfInt.of(alpha)).nu(i)


def xgeg_operator(alpha, tau) -> DiffOp:
    """T_tau = (1-z^2)(D^2 - 2 tau'/tau D + tau''/tau) - (2a+1) z D + (2a-1) z tau'/tau."""
    a = HalfInt.of(alpha)
    tau = Poly.coerce(tau)
    if tau.is_zero():
        raise ValueError("tau must be non-zero")
    t1 = RatFunc(tau.deriv(), tau)
    t2 = RatFunc(tau.deriv(2), tau)
    c2 = RatFunc(ONE_MINUS_Z2)
    c1 = t1 * (ONE_MINUS_Z2 * -2) - Z * (a.two_alpha + 1)
    c0 = t2 * ONE_MINUS_Z2 + t1 * (Z * (a.two_alpha - 1))
    return DiffOp([c0, c1, c2])


def wronskian_operator(f, g) -> DiffOp:
    """y -> Wr[f, y] / g, for quasi-rational f, g with rational f/g."""
    f, g = QuasiRat.coerce(f), QuasiRat.coerce(g)
    return DiffOp([-(f.deriv() / g).to_ratfunc(), (f / g).to_ratfunc()])


def a_operator(tau, pi) -> DiffOp:
    """A_{tau pi} = tau^-1 (pi D - pi')."""
    tau, pi = RatFunc.coerce(tau), RatFunc.coerce(pi)
    return DiffOp([-pi.deriv() / tau, pi / tau])


def b_operator(alpha, pi, tau) -> DiffOp:
    """B_{pi tau} = (1-z^2) A_{pi tau} - (2a+1) z tau / pi."""
    a = HalfInt.of(alpha)
    tau, pi = RatFunc.coerce(tau), RatFunc.coerce(pi)
    return compose(DiffOp.mult(ONE_MINUS_Z2), a_operator(pi, tau)) - DiffOp.mult(
        tau * Z * (a.two_alpha + 1) / pi
    )


def pi_hat(alpha, pi) -> QuasiRat:
    """(1-z^2)^(-alpha-3/2) pi."""
    a = HalfInt.of(alpha)
    return QuasiRat(pi, -a.value - mpq(3, 2))


def tau_hat(alpha, tau) -> QuasiRat:
    """(1-z^2)^(-alpha-1/2) tau."""
    a = HalfInt.of(alpha)
    return QuasiRat(tau, -a.value - mpq(1, 2))


def lagrange_check(alpha, tau, y1, y2) -> bool:
    """(P_tau Wr[y1, y2])' == (y1 T y2 - y2 T y1) W_tau as a quasi-rational identity."""
    a = HalfInt.of(alpha)
    tau = Poly.coerce(tau)
    T = xgeg_operator(a, tau)
    y1, y2 = QuasiRat.coerce(y1), QuasiRat.coerce(y2)
    P = QuasiRat(RatFunc(1, tau * tau), a.value + mpq(1, 2))
    W = QuasiRat(RatFunc(1, tau * tau), a.value - mpq(1, 2))
    lhs = (P * wronskian2(y1, y2)).deriv()
    rhs = (y1 * T(y2) - y2 * T(y1)) * W
    return lhs == rhs


def dual_eigen_residual(alpha, tau, pi) -> QuasiRat:
    """pi T^(a+1)_pi tau_hat - tau_hat T^(a)_tau pi - (2a+1) pi tau_hat; identically zero."""
    a = HalfInt.of(alpha)
    tau, pi = Poly.coerce(tau), Poly.coerce(pi)
    th = tau_hat(a, tau)
    lhs = QuasiRat(pi) * xgeg_operator(a.shift(), pi)(th)
    return lhs - th * xgeg_operator(a, tau)(pi) - QuasiRat(pi) * th * (a.two_alpha + 1)
