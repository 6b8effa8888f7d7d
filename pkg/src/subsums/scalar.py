"""Exact scalars in a real quadratic field Q(sqrt d).

A :class:`Scalar` is ``a + b*sqrt(d)`` with rational ``a`` and ``b`` and a
square-free natural ``d``.  Rationals use ``d == 1`` and ``b == 0``.  Every
comparison is decided exactly, so covers built from these values never lose a
gap to rounding.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from numbers import Rational
from typing import Union

from .errors import BadScalarLiteral, MixedRadicand

__all__ = ["Scalar", "ScalarLike", "as_scalar", "parse_scalar", "sign_quadratic", "ZERO", "ONE"]

ScalarLike = Union["Scalar", int, Fraction]


def _is_squarefree(d: int) -> bool:
    if d < 1:
        return False
    f = 2
    while f * f <= d:
        if d % (f * f) == 0:
            return False
        f += 1
    return True


def _join(d1: int, d2: int) -> int:
    if d1 == d2 or d2 == 1:
        return d1
    if d1 == 1:
        return d2
    raise MixedRadicand(f"cannot combine sqrt({d1}) and sqrt({d2}) scalars")


class Scalar:
    """Immutable element ``a + b*sqrt(d)`` of Q(sqrt d)."""

    __slots__ = ("a", "b", "d")

    a: Fraction
    b: Fraction
    d: int

    def __init__(self, a: Union[int, Fraction, str] = 0, b: Union[int, Fraction] = 0, d: int = 1):
        if isinstance(a, str):
            s = parse_scalar(a)
            a, b, d = s.a, s.b, s.d
        elif isinstance(a, Scalar) and b == 0 and d == 1:
            a, b, d = a.a, a.b, a.d
        for v in (a, b):
            if isinstance(v, float) or not isinstance(v, Rational):
                raise TypeError(f"Scalar components must be exact rationals, got {type(v).__name__}")
        if not _is_squarefree(d):
            raise BadScalarLiteral(f"radicand {d} is not a square-free natural number")
        a = Fraction(a)
        b = Fraction(b)
        if d == 1:
            a, b = a + b, Fraction(0)
        elif b == 0:
            d = 1
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "d", d)

    @classmethod
    def _make(cls, a: Fraction, b: Fraction, d: int) -> "Scalar":
        # trusted constructor: a, b already Fractions, d already square-free
        s = object.__new__(cls)
        if b == 0:
            d = 1
        object.__setattr__(s, "a", a)
        object.__setattr__(s, "b", b)
        object.__setattr__(s, "d", d)
        return s

    @classmethod
    def rational(cls, value: Union[int, Fraction]) -> "Scalar":
        return cls._make(Fraction(value), _FZERO, 1)

    def __setattr__(self, name, value):
        raise AttributeError("Scalar is immutable")

    def __reduce__(self):
        return (Scalar, (self.a, self.b, self.d))

    # -- predicates -------------------------------------------------------

    @property
    def is_rational(self) -> bool:
        return self.b == 0

    def as_fraction(self) -> Fraction:
        if self.b != 0:
            raise ValueError(f"{self} is irrational")
        return self.a

    def conjugate(self) -> "Scalar":
        return Scalar._make(self.a, -self.b, self.d)

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other: ScalarLike) -> "Scalar":
        o = _coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if self.d == 1 and o.d == 1:
            return Scalar._make(self.a + o.a, _FZERO, 1)
        return Scalar._make(self.a + o.a, self.b + o.b, _join(self.d, o.d))

    __radd__ = __add__

    def __neg__(self) -> "Scalar":
        return Scalar._make(-self.a, -self.b, self.d)

    def __pos__(self) -> "Scalar":
        return self

    def __sub__(self, other: ScalarLike) -> "Scalar":
        o = _coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if self.d == 1 and o.d == 1:
            return Scalar._make(self.a - o.a, _FZERO, 1)
        return Scalar._make(self.a - o.a, self.b - o.b, _join(self.d, o.d))

    def __rsub__(self, other: ScalarLike) -> "Scalar":
        o = _coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o - self

    def __mul__(self, other: ScalarLike) -> "Scalar":
        o = _coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if self.d == 1 and o.d == 1:
            return Scalar._make(self.a * o.a, _FZERO, 1)
        d = _join(self.d, o.d)
        return Scalar._make(
            self.a * o.a + self.b * o.b * d,
            self.a * o.b + self.b * o.a,
            d,
        )

    __rmul__ = __mul__

    def __truediv__(self, other: ScalarLike) -> "Scalar":
        o = _coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if o.a == 0 and o.b == 0:
            raise ZeroDivisionError("division by zero Scalar")
        if o.d == 1:
            return Scalar._make(self.a / o.a, self.b / o.a, self.d)
        norm = o.a * o.a - o.b * o.b * o.d
        return (self * o.conjugate()) * Scalar._make(1 / norm, _FZERO, 1)

    def __rtruediv__(self, other: ScalarLike) -> "Scalar":
        o = _coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o / self

    def __pow__(self, n: int) -> "Scalar":
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return ONE / (self ** (-n))
        if self.d == 1:
            return Scalar._make(self.a**n, _FZERO, 1)
        result, base = ONE, self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __abs__(self) -> "Scalar":
        return -self if sign_quadratic(self) < 0 else self

    # -- ordering ---------------------------------------------------------

    def sign(self) -> int:
        return sign_quadratic(self)

    def _cmp(self, other: ScalarLike) -> int:
        o = _coerce(other)
        if o is NotImplemented:
            raise TypeError(f"cannot compare Scalar with {type(other).__name__}")
        if self.d == 1 and o.d == 1:
            return (self.a > o.a) - (self.a < o.a)
        return sign_quadratic(self - o)

    def __eq__(self, other: object) -> bool:
        o = _coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self.a == o.a and self.b == o.b and (self.b == 0 or self.d == o.d)

    def __hash__(self) -> int:
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.d))

    def __lt__(self, other: ScalarLike) -> bool:
        return self._cmp(other) < 0

    def __le__(self, other: ScalarLike) -> bool:
        return self._cmp(other) <= 0

    def __gt__(self, other: ScalarLike) -> bool:
        return self._cmp(other) > 0

    def __ge__(self, other: ScalarLike) -> bool:
        return self._cmp(other) >= 0

    def __bool__(self) -> bool:
        return self.a != 0 or self.b != 0

    # -- conversions ------------------------------------------------------

    def __float__(self) -> float:
        if self.b == 0:
            return float(self.a)
        return float(self.a) + float(self.b) * math.sqrt(self.d)

    def floor(self) -> int:
        if self.b == 0:
            return math.floor(self.a)
        guess = math.floor(float(self))
        while self < guess:
            guess -= 1
        while self >= guess + 1:
            guess += 1
        return guess

    def ceil(self) -> int:
        return -((-self).floor())

    def __str__(self) -> str:
        if self.b == 0:
            return _fmt(self.a)
        surd = f"{_fmt(abs(self.b))}*sqrt({self.d})"
        if self.a == 0:
            return surd if self.b > 0 else "-" + surd
        return f"{_fmt(self.a)}{'+' if self.b > 0 else '-'}{surd}"

    def __repr__(self) -> str:
        return f"Scalar('{self}')"


_FZERO = Fraction(0)


def _fmt(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _coerce(x) -> Scalar:
    if isinstance(x, Scalar):
        return x
    if isinstance(x, (int, Fraction)) and not isinstance(x, bool):
        return Scalar._make(Fraction(x), _FZERO, 1)
    return NotImplemented


def as_scalar(x: Union[ScalarLike, str]) -> Scalar:
    """Coerce ints, Fractions and literal strings to :class:`Scalar`."""
    if isinstance(x, str):
        return parse_scalar(x)
    s = _coerce(x)
    if s is NotImplemented:
        raise TypeError(f"cannot convert {type(x).__name__} to an exact Scalar")
    return s


def sign_quadratic(s: Scalar) -> int:
    """Exact sign of ``a + b*sqrt(d)``: -1, 0 or +1."""
    sa = (s.a > 0) - (s.a < 0)
    sb = (s.b > 0) - (s.b < 0)
    if sb == 0:
        return sa
    if sa == 0 or sa == sb:
        return sb
    # opposite signs: the larger of a^2 and d*b^2 wins
    c = s.a * s.a - s.d * s.b * s.b
    return sa if c > 0 else sb


_RAT = r"[+-]?\d+(?:/\d+)?"
_LITERAL = re.compile(
    r"^(?P<rat>[+-]?\d+(?:/\d+)?)??"
    r"(?:(?P<ssign>[+-]?)(?:(?P<coef>\d+(?:/\d+)?)\*)?sqrt\((?P<d>\d+)\))?$"
)


def _parse_rat(text: str) -> Fraction:
    num, _, den = text.partition("/")
    if den and int(den) == 0:
        raise BadScalarLiteral(f"zero denominator in {text!r}")
    return Fraction(int(num), int(den) if den else 1)


def parse_scalar(text: str) -> Scalar:
    """Parse ``"p/q"``, ``"p/q+r/s*sqrt(d)"`` or ``"r/s*sqrt(d)"`` exactly.

    Decimal and exponent notation are rejected.
    """
    if not isinstance(text, str):
        raise BadScalarLiteral(f"scalar literal must be a string, got {type(text).__name__}")
    t = re.sub(r"\s*([+-])\s*", r"\1", text.strip())
    m = _LITERAL.match(t)
    if not t or m is None:
        raise BadScalarLiteral(f"not an exact scalar literal: {text!r}")
    has_surd = m.group("d") is not None
    if m.group("rat") is not None and has_surd and not m.group("ssign"):
        raise BadScalarLiteral(f"not an exact scalar literal: {text!r}")
    a = _parse_rat(m.group("rat")) if m.group("rat") is not None else Fraction(0)
    b, d = Fraction(0), 1
    if has_surd:
        b = _parse_rat(m.group("coef")) if m.group("coef") else Fraction(1)
        if m.group("ssign") == "-":
            b = -b
        d = int(m.group("d"))
        if not _is_squarefree(d):
            raise BadScalarLiteral(f"radicand {d} in {text!r} is not square-free")
    return Scalar(a, b, d)


ZERO = Scalar(0)
ONE = Scalar(1)
