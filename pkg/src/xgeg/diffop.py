"""Linear differential operators with rational-function coefficients.

A :class:`DiffOp` stores ``c_0, ..., c_n`` for ``sum_k c_k(z) D**k``.  The
normal form is canonical, so operator equality is coefficient equality.
"""

from __future__ import annotations

from math import comb
from typing import Iterable

from .ratalg import Poly, QuasiRat, RatFunc, _is_scalar

__all__ = ["DiffOp", "D", "apply", "compose", "conjugate", "intertwines"]


def _to_rf(c) -> RatFunc:
    if isinstance(c, QuasiRat):
        return c.to_ratfunc()
    return RatFunc.coerce(c)


class DiffOp:
    """``sum_k coeffs[k] * D**k`` in coefficients-times-powers-of-D form."""

    __slots__ = ("coeffs", "_hash")

    def __init__(self, coeffs: Iterable = ()):
        c = [_to_rf(a) for a in coeffs]
        while c and c[-1].is_zero():
            c.pop()
        self.coeffs: tuple[RatFunc, ...] = tuple(c)
        self._hash = None

    @classmethod
    def mult(cls, f) -> "DiffOp":
        """Multiplication operator by ``f``."""
        return cls([f])

    @classmethod
    def identity(cls) -> "DiffOp":
        return cls([1])

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, k: int) -> RatFunc:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else RatFunc(0)

    def __eq__(self, other) -> bool:
        if not isinstance(other, DiffOp):
            try:
                other = DiffOp.mult(other)
            except TypeError:
                return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.coeffs)
        return self._hash

    def __add__(self, other) -> "DiffOp":
        if not isinstance(other, DiffOp):
            other = DiffOp.mult(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return DiffOp(self.coeff(k) + other.coeff(k) for k in range(n))

    __radd__ = __add__

    def __neg__(self) -> "DiffOp":
        return DiffOp(-c for c in self.coeffs)

    def __sub__(self, other) -> "DiffOp":
        if not isinstance(other, DiffOp):
            other = DiffOp.mult(other)
        return self + (-other)

    def __rsub__(self, other) -> "DiffOp":
        return DiffOp.mult(other) - self

    def __mul__(self, other) -> "DiffOp":
        if isinstance(other, DiffOp):
            return compose(self, other)
        # right multiplication by a function is composition with a multiplication operator
        return compose(self, DiffOp.mult(other))

    def __rmul__(self, other) -> "DiffOp":
        if _is_scalar(other):
            return DiffOp(c * other for c in self.coeffs)
        return compose(DiffOp.mult(other), self)

    def __call__(self, f) -> QuasiRat:
        return apply(self, f)

    def __str__(self) -> str:
        if not self.coeffs:
            return "(0)"
        parts = []
        for k in range(self.order, -1, -1):
            body = str(self.coeffs[k]) if k < len(self.coeffs) else "0"
            parts.append(f"({body})*D^{k}" if k else f"({body})")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"DiffOp({self})"


D = DiffOp([0, 1])


def apply(op: DiffOp, f) -> QuasiRat:
    """Apply ``op`` to a quasi-rational function."""
    f = QuasiRat.coerce(f)
    # a shared denominator lets the sum be reduced once
    dens = {c.den for c in op.coeffs if not c.is_zero()}
    deriv = f
    if len(dens) == 1 and not f.is_zero():
        den = next(iter(dens))
        terms = []
        for k, c in enumerate(op.coeffs):
            if k:
                deriv = deriv.deriv()
            if not c.is_zero():
                terms.append(QuasiRat(RatFunc._reduced(c.num, Poly.const(1)), 0) * deriv)
        total = QuasiRat(0)
        for t in terms:
            total = total + t
        return total * QuasiRat(RatFunc._reduced(Poly.const(1), den), 0)
    out = QuasiRat(0)
    for k, c in enumerate(op.coeffs):
        if k:
            deriv = deriv.deriv()
        if not c.is_zero():
            out = out + QuasiRat(c, 0) * deriv
    return out


def compose(a: DiffOp, b: DiffOp) -> DiffOp:
    """The operator ``a o b`` via the Leibniz rule."""
    if a.is_zero() or b.is_zero():
        return DiffOp()
    out = [RatFunc(0)] * (a.order + b.order + 1)
    for j, bj in enumerate(b.coeffs):
        if bj.is_zero():
            continue
        # D**i (bj D**j) = sum_k C(i,k) bj^(k) D**(i-k+j)
        derivs = [bj]
        for _ in range(a.order):
            derivs.append(derivs[-1].deriv())
        for i, ai in enumerate(a.coeffs):
            if ai.is_zero():
                continue
            for k in range(i + 1):
                d = derivs[k]
                if d.is_zero():
                    continue
                out[i - k + j] = out[i - k + j] + ai * d * comb(i, k)
    return DiffOp(out)


def conjugate(op: DiffOp, s) -> DiffOp:
    """``s o op o s**-1``, computed as ``D -> D - s'/s``."""
    s = QuasiRat.coerce(s) if not isinstance(s, QuasiRat) else s
    if s.is_zero():
        raise ZeroDivisionError("conjugation by zero")
    sigma = s.log_deriv()
    if sigma.is_zero():
        return op
    shifted = DiffOp([-sigma, 1])
    out = DiffOp()
    power = DiffOp.identity()
    for k, c in enumerate(op.coeffs):
        if k:
            power = compose(shifted, power)
        if not c.is_zero():
            out = out + compose(DiffOp.mult(c), power)
    return out


def intertwines(a: DiffOp, t1: DiffOp, t2: DiffOp) -> bool:
    """True iff ``a o t1 == t2 o a``."""
    return compose(a, t1) == compose(t2, a)
