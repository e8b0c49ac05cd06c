"""Exact univariate algebra over the rationals.

Scalars are ``gmpy2.mpq`` values.  :class:`Poly` is a dense polynomial in
``z`` with ascending coefficients, :class:`RatFunc` a reduced quotient of
two polynomials with monic denominator, and :class:`QuasiRat` a function of
the form ``r(z) * (1 - z**2)**s`` with ``r`` rational and ``s`` a
half-integer.  All values are immutable.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Iterable, Sequence, Union

import gmpy2
from gmpy2 import mpq, mpz
from sympy.polys.domains import ZZ
from sympy.polys.euclidtools import dup_gcd

from .exceptions import IncompatibleExponentError

__all__ = [
    "NEG_INF",
    "Poly",
    "RatFunc",
    "HalfIntExp",
    "QuasiRat",
    "Z",
    "ONE_MINUS_Z2",
    "rat",
    "rat_to_str",
    "poly_gcd",
    "poly_antideriv_from",
    "wronskian2",
    "sturm_sequence",
    "sturm_count",
]

#: Degree of the zero polynomial.
NEG_INF = float("-inf")

_MPQ = type(mpq(0))
_ZERO = mpq(0)
_ONE = mpq(1)

Scalar = Union[int, Fraction, str, _MPQ]


def rat(x) -> mpq:
    """Convert an exact scalar (int, Fraction, mpq or ``"p/q"`` string)."""
    if isinstance(x, _MPQ):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(x, (int, type(mpz(0)))):
        return mpq(x)
    if isinstance(x, Fraction):
        return mpq(x.numerator, x.denominator)
    if isinstance(x, str):
        s = x.strip()
        if not s:
            raise ValueError("empty rational literal")
        return mpq(s)
    raise TypeError(f"cannot convert {type(x).__name__} to an exact rational")


def rat_to_str(x) -> str:
    """``"p/q"``, or ``"p"`` when the denominator is one."""
    return str(rat(x))


def _is_scalar(x) -> bool:
    return isinstance(x, (int, Fraction, _MPQ, type(mpz(0)))) and not isinstance(x, bool)


class Poly:
    """Dense polynomial in ``z`` with exact rational coefficients."""

    __slots__ = ("_c", "_hash")

    def __init__(self, coeffs: Iterable[Scalar] = ()):
        c = [rat(a) for a in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self._c = tuple(c)
        self._hash = None

    @classmethod
    def _raw(cls, c: Sequence[mpq]) -> "Poly":
        c = list(c)
        while c and c[-1] == 0:
            c.pop()
        p = object.__new__(cls)
        p._c = tuple(c)
        p._hash = None
        return p

    @classmethod
    def const(cls, a: Scalar) -> "Poly":
        return cls._raw((rat(a),))

    @classmethod
    def monomial(cls, k: int, a: Scalar = 1) -> "Poly":
        return cls._raw((_ZERO,) * k + (rat(a),))

    @classmethod
    def coerce(cls, x) -> "Poly":
        if isinstance(x, Poly):
            return x
        if _is_scalar(x) or isinstance(x, str):
            return cls.const(x)
        raise TypeError(f"cannot convert {type(x).__name__} to Poly")

    # -- inspection -------------------------------------------------------
    @property
    def coeffs(self) -> tuple:
        return self._c

    @property
    def degree(self):
        return len(self._c) - 1 if self._c else NEG_INF

    @property
    def lc(self) -> mpq:
        return self._c[-1] if self._c else _ZERO

    def is_zero(self) -> bool:
        return not self._c

    def is_const(self) -> bool:
        return len(self._c) <= 1

    def __bool__(self) -> bool:
        return bool(self._c)

    def __len__(self) -> int:
        return len(self._c)

    def __getitem__(self, k: int) -> mpq:
        return self._c[k] if 0 <= k < len(self._c) else _ZERO

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self._c == other._c
        if _is_scalar(other):
            return self._c == ((rat(other),) if other != 0 else ())
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self._c)
        return self._hash

    # -- arithmetic -------------------------------------------------------
    def __neg__(self) -> "Poly":
        return Poly._raw(tuple(-a for a in self._c))

    def __add__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            if isinstance(other, (RatFunc, QuasiRat)):
                return NotImplemented
            other = Poly.coerce(other)
        a, b = self._c, other._c
        if len(a) < len(b):
            a, b = b, a
        c = list(a)
        for k, v in enumerate(b):
            c[k] += v
        return Poly._raw(c)

    __radd__ = __add__

    def __sub__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            if isinstance(other, (RatFunc, QuasiRat)):
                return NotImplemented
            other = Poly.coerce(other)
        return self + (-other)

    def __rsub__(self, other) -> "Poly":
        return Poly.coerce(other) - self

    def __mul__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            if isinstance(other, (RatFunc, QuasiRat)):
                return NotImplemented
            if _is_scalar(other) or isinstance(other, str):
                s = rat(other)
                if s == 0:
                    return Poly._raw(())
                return Poly._raw(tuple(a * s for a in self._c))
            return NotImplemented
        a, b = self._c, other._c
        if not a or not b:
            return Poly._raw(())
        if len(a) == 1:
            return other * a[0]
        if len(b) == 1:
            return self * b[0]
        c = [_ZERO] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai == 0:
                continue
            for j, bj in enumerate(b):
                c[i + j] += ai * bj
        return Poly._raw(c)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Poly":
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = Poly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __divmod__(self, other) -> tuple["Poly", "Poly"]:
        other = Poly.coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self._c)
        db = len(other._c) - 1
        if len(r) - 1 < db:
            return Poly._raw(()), self
        inv = 1 / other._c[-1]
        b = other._c
        q = [_ZERO] * (len(r) - db)
        for k in range(len(r) - 1 - db, -1, -1):
            f = r[k + db] * inv
            q[k] = f
            if f:
                for j in range(db + 1):
                    r[k + j] -= f * b[j]
        return Poly._raw(q), Poly._raw(r[:db])

    def __floordiv__(self, other) -> "Poly":
        return divmod(self, other)[0]

    def __mod__(self, other) -> "Poly":
        return divmod(self, other)[1]

    def exact_div(self, other) -> "Poly":
        q, r = divmod(self, other)
        if r:
            raise ArithmeticError("polynomial division is not exact")
        return q

    def divides(self, other: "Poly") -> bool:
        return not (other % self)

    # -- calculus and evaluation -----------------------------------------
    def __call__(self, x):
        if isinstance(x, (Poly, RatFunc)):
            acc = Poly._raw(()) if isinstance(x, Poly) else RatFunc(0)
            for a in reversed(self._c):
                acc = acc * x + a
            return acc
        x = rat(x)
        acc = _ZERO
        for a in reversed(self._c):
            acc = acc * x + a
        return acc

    def deriv(self, k: int = 1) -> "Poly":
        c = self._c
        for _ in range(k):
            c = tuple(c[j] * j for j in range(1, len(c)))
        return Poly._raw(c)

    def antideriv(self) -> "Poly":
        """Antiderivative with zero constant term."""
        return Poly._raw((_ZERO,) + tuple(a / (j + 1) for j, a in enumerate(self._c)))

    def monic(self) -> "Poly":
        if not self._c:
            return self
        return self * (1 / self._c[-1])

    def content(self) -> mpq:
        """Positive rational ``c`` with ``self / c`` primitive over the integers."""
        if not self._c:
            return _ONE
        num = reduce(gmpy2.gcd, (a.numerator for a in self._c))
        den = reduce(gmpy2.lcm, (a.denominator for a in self._c))
        return mpq(abs(num), den)

    def primitive(self) -> "Poly":
        """Integer polynomial with coprime coefficients and the same sign of lc."""
        return self * (1 / self.content()) if self._c else self

    def int_coeffs(self) -> list:
        """Coefficients of :meth:`primitive` as integers, ascending."""
        return [int(a.numerator) for a in self.primitive()._c]

    # -- printing ---------------------------------------------------------
    def to_str(self, var: str = "z") -> str:
        if not self._c:
            return "0"
        out = []
        for k, a in enumerate(self._c):
            if a == 0:
                continue
            sign = "-" if a < 0 else "+"
            mag = abs(a)
            if k == 0:
                body = str(mag)
            else:
                mono = var if k == 1 else f"{var}^{k}"
                body = mono if mag == 1 else f"{mag}*{mono}"
            out.append((sign, body))
        first_sign, first = out[0]
        s = ("-" if first_sign == "-" else "") + first
        for sign, body in out[1:]:
            s += sign + body
        return s

    def __str__(self) -> str:
        return self.to_str()

    def __repr__(self) -> str:
        return f"Poly({[rat_to_str(a) for a in self._c]})"


Z = Poly._raw((_ZERO, _ONE))
ONE_MINUS_Z2 = Poly._raw((_ONE, _ZERO, -_ONE))


def _int_desc(p: Poly) -> list:
    return [ZZ(a.numerator) for a in reversed(p.primitive().coeffs)]


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic greatest common divisor (zero only if both inputs are zero)."""
    if a.is_zero():
        return b.monic()
    if b.is_zero():
        return a.monic()
    if a.is_const() or b.is_const():
        return Poly.const(1)
    h = dup_gcd(_int_desc(a), _int_desc(b), ZZ)
    return Poly._raw(tuple(mpq(int(c)) for c in reversed(h))).monic()


class RatFunc:
    """Reduced rational function ``num/den`` with monic denominator."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num=0, den=1):
        num = Poly.coerce(num)
        den = Poly.coerce(den)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero():
            den = Poly.const(1)
        elif not den.is_const():
            g = poly_gcd(num, den)
            if not g.is_const():
                num = num.exact_div(g)
                den = den.exact_div(g)
        self._set(num, den)

    def _set(self, num: Poly, den: Poly) -> None:
        lc = den.lc
        if lc != 1:
            inv = 1 / lc
            num, den = num * inv, den * inv
        self.num = num
        self.den = den
        self._hash = None

    @classmethod
    def _reduced(cls, num: Poly, den: Poly) -> "RatFunc":
        """Build from a pair already known to be coprime."""
        r = object.__new__(cls)
        if num.is_zero():
            den = Poly.const(1)
        r._set(num, den)
        return r

    @classmethod
    def coerce(cls, x) -> "RatFunc":
        if isinstance(x, RatFunc):
            return x
        if isinstance(x, Poly):
            return cls._reduced(x, Poly.const(1))
        if _is_scalar(x) or isinstance(x, str):
            return cls._reduced(Poly.const(x), Poly.const(1))
        raise TypeError(f"cannot convert {type(x).__name__} to RatFunc")

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_poly(self) -> bool:
        return self.den.is_const()

    def as_poly(self) -> Poly:
        if not self.is_poly():
            raise ValueError(f"not a polynomial: {self}")
        return self.num

    def __bool__(self) -> bool:
        return not self.num.is_zero()

    def __eq__(self, other) -> bool:
        if isinstance(other, RatFunc):
            return self.num == other.num and self.den == other.den
        if isinstance(other, Poly) or _is_scalar(other):
            return self.is_poly() and self.num == other
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def __neg__(self) -> "RatFunc":
        return RatFunc._reduced(-self.num, self.den)

    def __add__(self, other) -> "RatFunc":
        if isinstance(other, QuasiRat):
            return NotImplemented
        other = RatFunc.coerce(other)
        a, b, c, d = self.num, self.den, other.num, other.den
        if a.is_zero():
            return other
        if c.is_zero():
            return self
        if b == d:
            return RatFunc(a + c, b)
        if b.is_const():
            return RatFunc._reduced(a * d + c, d)
        if d.is_const():
            return RatFunc._reduced(a + c * b, b)
        g = poly_gcd(b, d)
        if g.is_const():
            return RatFunc._reduced(a * d + c * b, b * d)
        b1, d1 = b.exact_div(g), d.exact_div(g)
        num = a * d1 + c * b1
        g2 = poly_gcd(num, g)
        if not g2.is_const():
            num = num.exact_div(g2)
            g = g.exact_div(g2)
        return RatFunc._reduced(num, b1 * d1 * g)

    __radd__ = __add__

    def __sub__(self, other) -> "RatFunc":
        if isinstance(other, QuasiRat):
            return NotImplemented
        return self + (-RatFunc.coerce(other))

    def __rsub__(self, other) -> "RatFunc":
        return RatFunc.coerce(other) - self

    def __mul__(self, other) -> "RatFunc":
        if isinstance(other, QuasiRat):
            return NotImplemented
        if _is_scalar(other) or isinstance(other, str):
            s = rat(other)
            return RatFunc._reduced(self.num * s, self.den)
        other = RatFunc.coerce(other)
        a, b, c, d = self.num, self.den, other.num, other.den
        if a.is_zero() or c.is_zero():
            return RatFunc(0)
        g1 = poly_gcd(a, d) if not d.is_const() else None
        g2 = poly_gcd(c, b) if not b.is_const() else None
        if g1 is not None and not g1.is_const():
            a, d = a.exact_div(g1), d.exact_div(g1)
        if g2 is not None and not g2.is_const():
            c, b = c.exact_div(g2), b.exact_div(g2)
        return RatFunc._reduced(a * c, b * d)

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        if self.num.is_zero():
            raise ZeroDivisionError("inverse of zero rational function")
        return RatFunc._reduced(self.den, self.num)

    def __truediv__(self, other) -> "RatFunc":
        if isinstance(other, QuasiRat):
            return NotImplemented
        if _is_scalar(other) or isinstance(other, str):
            s = rat(other)
            if s == 0:
                raise ZeroDivisionError("division by zero")
            return RatFunc._reduced(self.num * (1 / s), self.den)
        return self * RatFunc.coerce(other).inverse()

    def __rtruediv__(self, other) -> "RatFunc":
        return RatFunc.coerce(other) * self.inverse()

    def __pow__(self, n: int) -> "RatFunc":
        if n < 0:
            return self.inverse() ** (-n)
        return RatFunc._reduced(self.num ** n, self.den ** n)

    def deriv(self) -> "RatFunc":
        n, d = self.num, self.den
        if d.is_const():
            return RatFunc._reduced(n.deriv(), d)
        return RatFunc(n.deriv() * d - n * d.deriv(), d * d)

    def log_deriv(self) -> "RatFunc":
        if self.num.is_zero():
            raise ZeroDivisionError("logarithmic derivative of zero")
        return RatFunc(self.num.deriv(), self.num) - RatFunc(self.den.deriv(), self.den)

    def __call__(self, x) -> mpq:
        d = self.den(x)
        if d == 0:
            raise ZeroDivisionError(f"pole of {self} at {x}")
        return self.num(x) / d

    def __str__(self) -> str:
        if self.is_poly():
            return self.num.to_str()
        return f"({self.num.to_str()})/({self.den.to_str()})"

    def __repr__(self) -> str:
        return f"RatFunc({self})"


@dataclass(frozen=True, order=True)
class HalfIntExp:
    """Half-integer exponent ``s`` stored as ``2*s``."""

    twice_value: int

    @classmethod
    def of(cls, s) -> "HalfIntExp":
        s2 = 2 * rat(s)
        if s2.denominator != 1:
            raise ValueError(f"exponent {s} is not a half-integer")
        return cls(int(s2))

    @property
    def value(self) -> mpq:
        return mpq(self.twice_value, 2)

    def is_integer(self) -> bool:
        return self.twice_value % 2 == 0

    def __add__(self, other: "HalfIntExp") -> "HalfIntExp":
        return HalfIntExp(self.twice_value + other.twice_value)

    def __sub__(self, other: "HalfIntExp") -> "HalfIntExp":
        return HalfIntExp(self.twice_value - other.twice_value)

    def __neg__(self) -> "HalfIntExp":
        return HalfIntExp(-self.twice_value)

    def __str__(self) -> str:
        return rat_to_str(self.value)


def _vanishes_at_pm1(p: Poly) -> bool:
    return p.degree >= 2 and p(1) == 0 and p(-1) == 0


class QuasiRat:
    """``rat(z) * (1 - z**2)**exp`` with every integer power of (1 - z**2) in ``exp``."""

    __slots__ = ("rat", "exp", "_hash")

    def __init__(self, r=1, exp=0):
        r = RatFunc.coerce(r)
        e2 = exp.twice_value if isinstance(exp, HalfIntExp) else HalfIntExp.of(exp).twice_value
        if r.is_zero():
            e2 = 0
        else:
            num, den = r.num, r.den
            changed = False
            while _vanishes_at_pm1(num):
                num = num.exact_div(ONE_MINUS_Z2)
                e2 += 2
                changed = True
            while _vanishes_at_pm1(den):
                den = den.exact_div(ONE_MINUS_Z2)
                e2 -= 2
                changed = True
            if changed:
                r = RatFunc._reduced(num, den)
        self.rat = r
        self.exp = HalfIntExp(e2)
        self._hash = None

    @classmethod
    def coerce(cls, x) -> "QuasiRat":
        if isinstance(x, QuasiRat):
            return x
        return cls(RatFunc.coerce(x), 0)

    @classmethod
    def power(cls, s) -> "QuasiRat":
        """``(1 - z**2)**s``."""
        return cls(1, s)

    def is_zero(self) -> bool:
        return self.rat.is_zero()

    def __bool__(self) -> bool:
        return not self.is_zero()

    def is_rational(self) -> bool:
        return self.exp.is_integer()

    def to_ratfunc(self) -> RatFunc:
        """Expand into a rational function (integer exponents only)."""
        if not self.exp.is_integer():
            raise IncompatibleExponentError(f"{self} is not rational")
        k = self.exp.twice_value // 2
        if k >= 0:
            return self.rat * (ONE_MINUS_Z2 ** k)
        return self.rat / (ONE_MINUS_Z2 ** (-k))

    def __eq__(self, other) -> bool:
        if not isinstance(other, QuasiRat):
            if isinstance(other, (RatFunc, Poly)) or _is_scalar(other):
                other = QuasiRat.coerce(other)
            else:
                return NotImplemented
        return self.rat == other.rat and self.exp == other.exp

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.rat, self.exp))
        return self._hash

    def __neg__(self) -> "QuasiRat":
        q = object.__new__(QuasiRat)
        q.rat, q.exp, q._hash = -self.rat, self.exp, None
        return q

    def _shifted_rat(self, e2: int) -> RatFunc:
        """Rational part after lowering the exponent to ``e2`` (same parity)."""
        k = (self.exp.twice_value - e2) // 2
        return self.rat * (ONE_MINUS_Z2 ** k) if k else self.rat

    def __add__(self, other) -> "QuasiRat":
        other = QuasiRat.coerce(other)
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        e1, e2 = self.exp.twice_value, other.exp.twice_value
        if (e1 - e2) % 2:
            raise IncompatibleExponentError(
                f"cannot add exponents {self.exp} and {other.exp}"
            )
        e = min(e1, e2)
        return QuasiRat(self._shifted_rat(e) + other._shifted_rat(e), HalfIntExp(e))

    __radd__ = __add__

    def __sub__(self, other) -> "QuasiRat":
        return self + (-QuasiRat.coerce(other))

    def __rsub__(self, other) -> "QuasiRat":
        return QuasiRat.coerce(other) - self

    def __mul__(self, other) -> "QuasiRat":
        if _is_scalar(other) or isinstance(other, str):
            s = rat(other)
            if s == 0:
                return QuasiRat(0)
            q = object.__new__(QuasiRat)
            q.rat, q.exp, q._hash = self.rat * s, self.exp, None
            return q
        other = QuasiRat.coerce(other)
        return QuasiRat(self.rat * other.rat, self.exp + other.exp)

    __rmul__ = __mul__

    def inverse(self) -> "QuasiRat":
        return QuasiRat(self.rat.inverse(), -self.exp)

    def __truediv__(self, other) -> "QuasiRat":
        if _is_scalar(other) or isinstance(other, str):
            return self * (1 / rat(other))
        return self * QuasiRat.coerce(other).inverse()

    def __rtruediv__(self, other) -> "QuasiRat":
        return QuasiRat.coerce(other) * self.inverse()

    def __pow__(self, n: int) -> "QuasiRat":
        if n < 0:
            return self.inverse() ** (-n)
        return QuasiRat(self.rat ** n, HalfIntExp(self.exp.twice_value * n))

    def deriv(self) -> "QuasiRat":
        # d/dz [r (1-z^2)^s] = (r' (1-z^2) - 2 s z r) (1-z^2)^(s-1)
        e2 = self.exp.twice_value
        r = self.rat
        if e2 == 0:
            return QuasiRat(r.deriv(), 0)
        new = r.deriv() * ONE_MINUS_Z2 - r * (Z * e2)
        return QuasiRat(new, HalfIntExp(e2 - 2))

    def log_deriv(self) -> RatFunc:
        lr = self.rat.log_deriv()
        e2 = self.exp.twice_value
        if e2 == 0:
            return lr
        return lr - RatFunc(Z * e2, ONE_MINUS_Z2)

    def evalf(self, x, dps: int = 50):
        """High-precision value at a rational point strictly inside (-1, 1)."""
        import mpmath

        with mpmath.workdps(dps):
            xv = mpmath.mpf(rat(x).numerator) / rat(x).denominator
            rv = self.rat(x)
            base = mpmath.mpf(rv.numerator) / rv.denominator
            s = mpmath.mpf(self.exp.twice_value) / 2
            return base * (1 - xv * xv) ** s

    def __str__(self) -> str:
        if self.exp.twice_value == 0:
            return str(self.rat)
        return f"({self.rat})*(1-z^2)^({self.exp})"

    def __repr__(self) -> str:
        return f"QuasiRat({self})"


def poly_antideriv_from(p: Poly, a) -> Poly:
    """Antiderivative of ``p`` that vanishes at ``z = a``."""
    F = Poly.coerce(p).antideriv()
    return F - F(rat(a))


def wronskian2(f, g) -> QuasiRat:
    """``f*g' - f'*g`` for quasi-rational ``f`` and ``g``."""
    f, g = QuasiRat.coerce(f), QuasiRat.coerce(g)
    if (f.exp.twice_value - g.exp.twice_value) % 2 and not (f.is_zero() or g.is_zero()):
        raise IncompatibleExponentError(
            f"Wronskian of exponents {f.exp} and {g.exp} is not quasi-rational"
        )
    return f * g.deriv() - f.deriv() * g


def sturm_sequence(p: Poly) -> list[Poly]:
    """Sturm chain of ``p``, each member scaled by a positive constant."""
    p = Poly.coerce(p)
    if p.is_zero():
        raise ValueError("Sturm sequence of the zero polynomial")
    seq = [p.primitive(), p.deriv().primitive()]
    while seq[-1] and not seq[-1].is_const():
        r = -(seq[-2] % seq[-1])
        if r.is_zero():
            break
        seq.append(r * (1 / r.content()))
    return [s for s in seq if s]


def _sign_changes(seq: Sequence[Poly], x: mpq) -> int:
    signs = []
    for s in seq:
        v = s(x)
        if v != 0:
            signs.append(v > 0)
    return sum(1 for u, v in zip(signs, signs[1:]) if u != v)


def sturm_count(p: Poly, a, b, closed: bool = False) -> int:
    """Number of distinct real roots of ``p`` in ``(a, b]``, or ``[a, b]`` if closed."""
    p = Poly.coerce(p)
    a, b = rat(a), rat(b)
    if p.is_zero():
        raise ValueError("root count of the zero polynomial")
    if not a < b:
        raise ValueError(f"empty interval ({a}, {b}]")
    if p.is_const():
        return 0
    p = p.exact_div(poly_gcd(p, p.deriv()))
    at_a = p(a) == 0
    if at_a:
        p = p.exact_div(Z - a)
    n = 0
    if not p.is_const():
        seq = sturm_sequence(p)
        n = _sign_changes(seq, a) - _sign_changes(seq, b)
    return n + (1 if closed and at_a else 0)
