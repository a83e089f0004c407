"""Exact Gaussian rationals.

A :class:`Scalar` stores ``(a + b*i) / d`` with integers ``a, b`` and a
positive denominator ``d`` sharing no common factor with both ``a`` and
``b``.  Keeping a single common denominator is noticeably faster than a pair
of :class:`fractions.Fraction` objects for the elimination-heavy code in this
package.
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import gcd

__all__ = ["Scalar", "ZERO", "ONE", "I", "as_scalar", "parse_scalar"]


class Scalar:
    __slots__ = ("_a", "_b", "_d", "_hash")

    def __init__(self, re_part=0, im_part=0):
        re_part = Fraction(re_part)
        im_part = Fraction(im_part)
        d = re_part.denominator * im_part.denominator // gcd(
            re_part.denominator, im_part.denominator
        )
        a = re_part.numerator * (d // re_part.denominator)
        b = im_part.numerator * (d // im_part.denominator)
        self._set(a, b, d)

    def _set(self, a: int, b: int, d: int) -> None:
        if d < 0:
            a, b, d = -a, -b, -d
        g = gcd(a, b, d)
        if g != 1:
            a //= g
            b //= g
            d //= g
        self._a = a
        self._b = b
        self._d = d
        self._hash = None

    @classmethod
    def _raw(cls, a: int, b: int, d: int) -> "Scalar":
        obj = object.__new__(cls)
        obj._set(a, b, d)
        return obj

    # -- accessors ---------------------------------------------------------

    @property
    def re(self) -> Fraction:
        return Fraction(self._a, self._d)

    @property
    def im(self) -> Fraction:
        return Fraction(self._b, self._d)

    def is_zero(self) -> bool:
        return self._a == 0 and self._b == 0

    def is_real(self) -> bool:
        return self._b == 0

    def conjugate(self) -> "Scalar":
        return Scalar._raw(self._a, -self._b, self._d)

    def sort_key(self) -> tuple[Fraction, Fraction]:
        """Lexicographic order on ``(re, im)``."""
        return (self.re, self.im)

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if self._d == other._d:
            return Scalar._raw(self._a + other._a, self._b + other._b, self._d)
        return Scalar._raw(
            self._a * other._d + other._a * self._d,
            self._b * other._d + other._b * self._d,
            self._d * other._d,
        )

    __radd__ = __add__

    def __neg__(self):
        return Scalar._raw(-self._a, -self._b, self._d)

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if self._d == other._d:
            return Scalar._raw(self._a - other._a, self._b - other._b, self._d)
        return Scalar._raw(
            self._a * other._d - other._a * self._d,
            self._b * other._d - other._b * self._d,
            self._d * other._d,
        )

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        a, b, d = self._a, self._b, self._d
        c, e, f = other._a, other._b, other._d
        if b == 0 and e == 0:
            return Scalar._raw(a * c, 0, d * f)
        return Scalar._raw(a * c - b * e, a * e + b * c, d * f)

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        a, b, d = self._a, self._b, self._d
        norm = a * a + b * b
        if norm == 0:
            raise ZeroDivisionError("inverse of zero Scalar")
        return Scalar._raw(a * d, -b * d, norm)

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return _coerce(other) * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result = ONE
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- comparison / hashing ---------------------------------------------

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return False
        return self._a == other._a and self._b == other._b and self._d == other._d

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self._a, self._b, self._d))
        return self._hash

    def __bool__(self):
        return not self.is_zero()

    def __repr__(self):
        return f"Scalar({format_scalar(self)!r})"

    def __str__(self):
        return format_scalar(self)

    def __complex__(self):
        return complex(self._a / self._d, self._b / self._d)


def _coerce(x):
    if isinstance(x, Scalar):
        return x
    if isinstance(x, int):
        return Scalar._raw(x, 0, 1)
    if isinstance(x, Fraction):
        return Scalar._raw(x.numerator, 0, x.denominator)
    return NotImplemented


def as_scalar(x) -> Scalar:
    """Convert ints, Fractions, complex-with-integral-parts or strings."""
    if isinstance(x, Scalar):
        return x
    if isinstance(x, str):
        return parse_scalar(x)
    if isinstance(x, complex):
        if x.real != int(x.real) or x.imag != int(x.imag):
            raise TypeError("only integral complex literals convert exactly")
        return Scalar(int(x.real), int(x.imag))
    if isinstance(x, float):
        raise TypeError("floats are not accepted; use Fraction or a string")
    c = _coerce(x)
    if c is NotImplemented:
        raise TypeError(f"cannot convert {type(x).__name__} to Scalar")
    return c


ZERO = Scalar._raw(0, 0, 1)
ONE = Scalar._raw(1, 0, 1)
I = Scalar._raw(0, 1, 1)


def _fmt_fraction(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def format_scalar(s: Scalar) -> str:
    """Render as ``"a/b"``, ``"c/d i"`` or ``"a/b+c/d i"``."""
    re_, im_ = s.re, s.im
    if im_ == 0:
        return _fmt_fraction(re_)
    im_txt = _fmt_fraction(abs(im_)) + " i"
    if re_ == 0:
        return ("-" if im_ < 0 else "") + im_txt
    return _fmt_fraction(re_) + ("-" if im_ < 0 else "+") + im_txt


_RATIONAL = re.compile(r"[+-]?\d+(?:/\d+)?")


def _parse_rational(text: str, whole: str) -> Fraction:
    if not _RATIONAL.fullmatch(text):
        raise ValueError(f"malformed scalar {whole!r}")
    try:
        return Fraction(text)
    except ZeroDivisionError:
        raise ValueError(f"zero denominator in scalar {whole!r}") from None


def parse_scalar(text: str) -> Scalar:
    """Parse the textual scalar format, e.g. ``"-3/2+1/1 i"`` or ``"7"``.

    Raises ``ValueError`` on malformed input.
    """
    s = "".join(text.split()).replace("*", "")
    if not s:
        raise ValueError(f"malformed scalar {text!r}")
    if not s.endswith("i"):
        return Scalar(_parse_rational(s, text))
    body = s[:-1]
    split = max(body.rfind("+"), body.rfind("-"))
    if split <= 0:
        re_txt, im_txt = "", body
    else:
        re_txt, im_txt = body[:split], body[split:]
    if im_txt in ("", "+", "-"):
        im_txt += "1"
    re_part = _parse_rational(re_txt, text) if re_txt else Fraction(0)
    return Scalar(re_part, _parse_rational(im_txt, text))
