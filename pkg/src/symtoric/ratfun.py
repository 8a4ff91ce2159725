"""Exact univariate polynomial and rational-function arithmetic over Q.

Every identity this package checks is an exact statement about rational
functions in one variable t, so coefficients are `fractions.Fraction`
throughout and there is no floating point anywhere.  Canonical forms make
equality decidable by structural comparison: polynomials store no trailing
zero coefficients, rational functions are gcd-reduced and carry a monic
denominator.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Union

Scalar = Union[int, Fraction]


class NotDivisibleError(ArithmeticError):
    """An exact polynomial division left a nonzero remainder."""


class PoleAtZeroError(ArithmeticError):
    """A Taylor expansion at t=0 was requested but the denominator vanishes there."""


def _coerce(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, (int, str)):
        return Fraction(c)
    raise TypeError(f"cannot use {type(c).__name__} as a rational coefficient")


@dataclass(frozen=True)
class Poly:
    """Dense polynomial in t; coeffs[d] is the coefficient of t^d.

    The zero polynomial has an empty coefficient tuple and degree -1.
    """

    coeffs: tuple[Fraction, ...] = ()

    def __init__(self, coeffs: Iterable = ()):
        cs = [_coerce(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @staticmethod
    def zero() -> "Poly":
        return Poly()

    @staticmethod
    def one() -> "Poly":
        return Poly((1,))

    @staticmethod
    def monomial(degree: int, coeff: Scalar = 1) -> "Poly":
        if degree < 0:
            raise ValueError("monomial degree must be non-negative")
        return Poly((0,) * degree + (coeff,))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def coeff(self, d: int) -> Fraction:
        if 0 <= d < len(self.coeffs):
            return self.coeffs[d]
        return Fraction(0)

    def leading(self) -> Fraction:
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def monic(self) -> "Poly":
        if not self.coeffs:
            return self
        lc = self.leading()
        return Poly(c / lc for c in self.coeffs)

    def evaluate(self, x: Scalar) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def shift(self, k: int) -> "Poly":
        """Multiply by t^k."""
        if not self.coeffs:
            return self
        return Poly((Fraction(0),) * k + self.coeffs)

    def truncate(self, order: int) -> "Poly":
        """Drop all terms of degree > order."""
        return Poly(self.coeffs[: order + 1])

    def _as_poly(self, other) -> "Poly | None":
        if isinstance(other, Poly):
            return other
        if isinstance(other, (int, Fraction)):
            return Poly((other,))
        return None

    def __add__(self, other) -> "Poly":
        o = self._as_poly(other)
        if o is None:
            return NotImplemented
        n = max(len(self.coeffs), len(o.coeffs))
        return Poly(self.coeff(d) + o.coeff(d) for d in range(n))

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly(-c for c in self.coeffs)

    def __sub__(self, other) -> "Poly":
        o = self._as_poly(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other) -> "Poly":
        o = self._as_poly(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other) -> "Poly":
        o = self._as_poly(other)
        if o is None:
            return NotImplemented
        if not self.coeffs or not o.coeffs:
            return Poly()
        out = [Fraction(0)] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(o.coeffs):
                if b:
                    out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Poly":
        if k < 0:
            raise ValueError("negative power of a polynomial; use RationalFunction")
        acc = Poly.one()
        base = self
        while k:
            if k & 1:
                acc = acc * base
            base = base * base
            k >>= 1
        return acc

    def __divmod__(self, other) -> tuple["Poly", "Poly"]:
        o = self._as_poly(other)
        if o is None:
            return NotImplemented
        if not o.coeffs:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = len(self.coeffs) - len(o.coeffs)
        if dq < 0:
            return Poly(), self
        quo = [Fraction(0)] * (dq + 1)
        lc = o.leading()
        for d in range(dq, -1, -1):
            c = rem[d + o.degree] / lc
            if c:
                quo[d] = c
                for j, b in enumerate(o.coeffs):
                    rem[d + j] -= c * b
        return Poly(quo), Poly(rem)

    def __mod__(self, other) -> "Poly":
        return divmod(self, other)[1]

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for d, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if d == 0:
                term = str(c)
            else:
                mag = "" if abs(c) == 1 else f"{abs(c)}*"
                var = "t" if d == 1 else f"t^{d}"
                term = f"{mag}{var}"
                if c < 0:
                    term = "-" + term
            if not parts:
                parts.append(term)
            elif term.startswith("-"):
                parts.append("- " + term[1:])
            else:
                parts.append("+ " + term)
        return " ".join(parts)


T = Poly((0, 1))


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd by the Euclidean algorithm; gcd(0, 0) = 0."""
    while b:
        a, b = b, a % b
    return a.monic() if a else a


def exact_divide(num: Poly, den: Poly) -> Poly:
    """Return q with num = q * den, or raise NotDivisibleError."""
    q, r = divmod(num, den)
    if r:
        raise NotDivisibleError(f"({num}) is not divisible by ({den}); remainder {r}")
    return q


@dataclass(frozen=True)
class RationalFunction:
    """Quotient of two Polys in canonical form: reduced, monic denominator."""

    num: Poly
    den: Poly

    def __init__(self, num=Poly(), den=Poly.one()):
        if not isinstance(num, Poly):
            num = Poly((num,)) if num else Poly()
        if not isinstance(den, Poly):
            den = Poly((den,)) if den else Poly()
        if not den:
            raise ZeroDivisionError("rational function with zero denominator")
        if num:
            g = poly_gcd(num, den)
            if g.degree > 0:
                num = exact_divide(num, g)
                den = exact_divide(den, g)
            lc = den.leading()
            if lc != 1:
                num = num * (1 / lc)
                den = den * (1 / lc)
        else:
            den = Poly.one()
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    @staticmethod
    def zero() -> "RationalFunction":
        return RationalFunction(Poly())

    @staticmethod
    def one() -> "RationalFunction":
        return RationalFunction(Poly.one())

    @staticmethod
    def from_poly(p: Poly) -> "RationalFunction":
        return RationalFunction(p)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self) -> bool:
        return bool(self.num)

    def is_polynomial(self) -> bool:
        return self.den == Poly.one()

    def as_poly(self) -> Poly:
        if not self.is_polynomial():
            raise NotDivisibleError(f"({self}) is not a polynomial")
        return self.num

    @staticmethod
    def _coerce_rf(other) -> "RationalFunction | None":
        if isinstance(other, RationalFunction):
            return other
        if isinstance(other, Poly):
            return RationalFunction(other)
        if isinstance(other, (int, Fraction)):
            return RationalFunction(Poly((other,)))
        return None

    def __add__(self, other) -> "RationalFunction":
        o = self._coerce_rf(other)
        if o is None:
            return NotImplemented
        return RationalFunction(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self) -> "RationalFunction":
        return RationalFunction(-self.num, self.den)

    def __sub__(self, other) -> "RationalFunction":
        o = self._coerce_rf(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other) -> "RationalFunction":
        o = self._coerce_rf(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other) -> "RationalFunction":
        o = self._coerce_rf(other)
        if o is None:
            return NotImplemented
        return RationalFunction(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "RationalFunction":
        o = self._coerce_rf(other)
        if o is None:
            return NotImplemented
        if not o.num:
            raise ZeroDivisionError("division by the zero rational function")
        return RationalFunction(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other) -> "RationalFunction":
        o = self._coerce_rf(other)
        if o is None:
            return NotImplemented
        return o / self

    def reciprocal(self) -> "RationalFunction":
        if not self.num:
            raise ZeroDivisionError("reciprocal of zero")
        return RationalFunction(self.den, self.num)

    def __pow__(self, k: int) -> "RationalFunction":
        if k < 0:
            return self.reciprocal() ** (-k)
        acc = RationalFunction.one()
        base = self
        while k:
            if k & 1:
                acc = acc * base
            base = base * base
            k >>= 1
        return acc

    def evaluate(self, x: Scalar) -> Fraction:
        d = self.den.evaluate(x)
        if d == 0:
            raise ZeroDivisionError(f"pole at t={x}")
        return self.num.evaluate(x) / d

    def series(self, order: int) -> Poly:
        """Taylor expansion at t=0 truncated to the given order."""
        if order < 0:
            raise ValueError("expansion order must be non-negative")
        d0 = self.den.coeff(0)
        if d0 == 0:
            raise PoleAtZeroError(f"({self}) has a pole at t=0")
        out = [Fraction(0)] * (order + 1)
        for k in range(order + 1):
            acc = self.num.coeff(k)
            for j in range(1, k + 1):
                dj = self.den.coeff(j)
                if dj:
                    acc -= dj * out[k - j]
            out[k] = acc / d0
        return Poly(out)

    def __str__(self) -> str:
        if self.is_polynomial():
            return str(self.num)
        return f"({self.num})/({self.den})"


def series_expand(f: "RationalFunction | Poly", order: int) -> Poly:
    """Exact Taylor coefficients of f at t=0 up to the given order."""
    if isinstance(f, Poly):
        return f.truncate(order)
    return f.series(order)


def one_minus_t2_power(k: int) -> Poly:
    """(1 - t^2)^k as a polynomial."""
    return Poly((1, 0, -1)) ** k


def one_plus_t2_power(k: int) -> Poly:
    """(1 + t^2)^k as a polynomial."""
    return Poly((1, 0, 1)) ** k
