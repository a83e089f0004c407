"""Homogeneous polynomials in two indeterminates ``(mu, lam)``.

``HomoPoly2(coeffs)`` has degree ``len(coeffs) - 1`` and ``coeffs[j]``
multiplies ``mu**(degree - j) * lam**j``.  Setting ``mu = 1`` turns the
coefficient list directly into a univariate polynomial in ``lam``, which is
how GCDs and factorizations are computed.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import total_ordering
from math import lcm
from typing import Iterable, Sequence

import mpmath

from . import upoly
from .errors import ZeroPolynomial
from .scalar import ONE, ZERO, Scalar, as_scalar

__all__ = [
    "HomoPoly2",
    "ProjectivePoint",
    "INFINITY",
    "hpoly_gcd",
    "hpoly_linear_factorization",
    "gaussian_rational_roots",
]


class HomoPoly2:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable):
        cs = tuple(as_scalar(c) for c in coeffs)
        if not cs or all(c.is_zero() for c in cs):
            cs = (ZERO,)
        self.coeffs = cs

    @classmethod
    def zero(cls) -> "HomoPoly2":
        return cls([ZERO])

    @classmethod
    def one(cls) -> "HomoPoly2":
        return cls([ONE])

    @classmethod
    def mu(cls) -> "HomoPoly2":
        return cls([ONE, ZERO])

    @classmethod
    def lam(cls) -> "HomoPoly2":
        return cls([ZERO, ONE])

    @classmethod
    def linear(cls, x) -> "HomoPoly2":
        """The divisor factor ``mu*x + lam``."""
        return cls([as_scalar(x), ONE])

    @classmethod
    def from_dehomogenized(cls, f: Sequence[Scalar], degree: int) -> "HomoPoly2":
        f = upoly.trim(f)
        if len(f) - 1 > degree:
            raise ValueError("degree too small for homogenization")
        return cls(list(f) + [ZERO] * (degree + 1 - len(f)))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return len(self.coeffs) == 1 and self.coeffs[0].is_zero()

    def dehomogenize(self) -> list[Scalar]:
        """Coefficients of ``p(1, lam)``, lowest power first."""
        return upoly.trim(self.coeffs)

    def mu_power(self) -> int:
        """Largest ``a`` with ``mu**a`` dividing the polynomial."""
        if self.is_zero():
            raise ZeroPolynomial("mu-power of the zero polynomial")
        return self.degree - upoly.degree(self.dehomogenize())

    def __mul__(self, other: "HomoPoly2") -> "HomoPoly2":
        if self.is_zero() or other.is_zero():
            return HomoPoly2.zero()
        prod = upoly.mul(list(self.coeffs), list(other.coeffs))
        return HomoPoly2.from_dehomogenized(prod, self.degree + other.degree)

    def __pow__(self, k: int) -> "HomoPoly2":
        out = HomoPoly2.one()
        for _ in range(k):
            out = out * self
        return out

    def __add__(self, other: "HomoPoly2") -> "HomoPoly2":
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        if self.degree != other.degree:
            raise ValueError("adding homogeneous polynomials of different degree")
        return HomoPoly2([a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self) -> "HomoPoly2":
        return HomoPoly2([-c for c in self.coeffs])

    def __sub__(self, other: "HomoPoly2") -> "HomoPoly2":
        return self + (-other)

    def scale(self, c) -> "HomoPoly2":
        c = as_scalar(c)
        return HomoPoly2([c * x for x in self.coeffs])

    def exact_div(self, other: "HomoPoly2") -> "HomoPoly2":
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        if self.is_zero():
            return HomoPoly2.zero()
        a, b = self.mu_power(), other.mu_power()
        if b > a:
            raise ArithmeticError("polynomial division is not exact")
        quo = upoly.exact_div(self.dehomogenize(), other.dehomogenize())
        return HomoPoly2.from_dehomogenized(quo, self.degree - other.degree)

    def divides(self, other: "HomoPoly2") -> bool:
        try:
            other.exact_div(self)
        except ArithmeticError:
            return False
        return True

    def normalize(self) -> "HomoPoly2":
        """Monic in ``lam`` when ``lam`` occurs, else monic in ``mu``."""
        if self.is_zero():
            return self
        lead = next(c for c in reversed(self.coeffs) if not c.is_zero())
        if lead == ONE:
            return self
        return self.scale(lead.inverse())

    def evaluate(self, mu, lam) -> Scalar:
        mu, lam = as_scalar(mu), as_scalar(lam)
        d = self.degree
        acc = ZERO
        for j, c in enumerate(self.coeffs):
            if not c.is_zero():
                acc = acc + c * mu ** (d - j) * lam ** j
        return acc

    def __eq__(self, other):
        if not isinstance(other, HomoPoly2):
            return NotImplemented
        if self.is_zero() and other.is_zero():
            return True
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"HomoPoly2({self})"

    def __str__(self):
        if self.is_zero():
            return "0"
        d = self.degree
        terms = []
        for j, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            mono = "*".join(
                part
                for part in (
                    _power("mu", d - j),
                    _power("lam", j),
                )
                if part
            )
            if not mono:
                terms.append(f"({c})")
            elif c == ONE:
                terms.append(mono)
            else:
                terms.append(f"({c})*{mono}")
        return " + ".join(terms)


def _power(name: str, k: int) -> str:
    if k == 0:
        return ""
    return name if k == 1 else f"{name}^{k}"


@total_ordering
@dataclass(frozen=True)
class ProjectivePoint:
    """A divisor location: ``Finite(x)`` for ``mu*x + lam``, or infinity for ``mu``."""

    x: Scalar | None

    @classmethod
    def finite(cls, x) -> "ProjectivePoint":
        return cls(as_scalar(x))

    @property
    def is_infinite(self) -> bool:
        return self.x is None

    def sort_key(self):
        if self.x is None:
            return (1, 0, 0)
        return (0, *self.x.sort_key())

    def __lt__(self, other: "ProjectivePoint"):
        return self.sort_key() < other.sort_key()

    def factor(self) -> HomoPoly2:
        return HomoPoly2.mu() if self.x is None else HomoPoly2.linear(self.x)

    def __str__(self):
        return "inf" if self.x is None else str(self.x)


INFINITY = ProjectivePoint(None)


def hpoly_gcd(p: HomoPoly2, q: HomoPoly2) -> HomoPoly2:
    """Normalized GCD; ``gcd(p, 0) = normalize(p)``."""
    if p.is_zero():
        return q.normalize()
    if q.is_zero():
        return p.normalize()
    a = min(p.mu_power(), q.mu_power())
    g = upoly.gcd(p.dehomogenize(), q.dehomogenize())
    return HomoPoly2.from_dehomogenized(g, a + upoly.degree(g))


def _to_mpc(s: Scalar) -> mpmath.mpc:
    return mpmath.mpc(mpmath.mpf(s.re.numerator) / s.re.denominator,
                      mpmath.mpf(s.im.numerator) / s.im.denominator)


def _gaussian_integer_coeffs(f: Sequence[Scalar]) -> list[tuple[int, int]]:
    den = 1
    for c in f:
        den = lcm(den, c.re.denominator, c.im.denominator)
    return [(int(c.re * den), int(c.im * den)) for c in f]


def _roots_squarefree(f: list[Scalar]) -> tuple[list[Scalar], list[Scalar]]:
    """Gaussian-rational roots of squarefree ``f`` and the leftover cofactor.

    Any Gaussian-rational root ``P/Q`` (lowest terms in Z[i]) of the
    integer-scaled polynomial has ``Q`` dividing the leading coefficient
    ``G``, so ``root * G`` is a Gaussian integer.  Numerical roots accurate
    to ``1 / (2|G|)`` therefore round to the exact candidate, which is then
    confirmed by exact evaluation.
    """
    if upoly.degree(f) == 1:
        return [-f[0] / f[1]], [ONE]
    ints = _gaussian_integer_coeffs(f)
    ga, gb = ints[-1]
    lead = Scalar(ga, gb)
    lead_abs = max(abs(ga), abs(gb), 1)
    digits = len(str(lead_abs)) + max(len(str(max(abs(a), abs(b)))) for a, b in ints)
    found: list[Scalar] = []
    dps = 30 + 2 * digits
    for _ in range(6):
        with mpmath.workdps(dps):
            coeffs = [mpmath.mpc(a, b) for a, b in reversed(ints)]
            try:
                approx, err = mpmath.polyroots(coeffs, maxsteps=200, extraprec=dps, error=True)
            except mpmath.libmp.NoConvergence:
                dps *= 2
                continue
            tol = mpmath.mpf(1) / (4 * lead_abs)
            if err < tol or _ == 5:
                break
        dps *= 2
    rest = list(f)
    for z in approx:
        w = z * mpmath.mpc(ga, gb)
        cand = Scalar(int(mpmath.nint(w.real)), int(mpmath.nint(w.imag))) / lead
        if cand in found:
            continue
        if upoly.evaluate(rest, cand).is_zero():
            found.append(cand)
            rest = upoly.exact_div(rest, [-cand, ONE])
    return found, rest


def gaussian_rational_roots(f: Sequence[Scalar]) -> tuple[list[tuple[Scalar, int]], list[Scalar]]:
    """Roots with multiplicity of a nonzero univariate polynomial, plus residual.

    The residual is monic and has no Gaussian-rational root.
    """
    f = upoly.trim(f)
    if not f:
        raise ZeroPolynomial("roots of the zero polynomial")
    roots: list[tuple[Scalar, int]] = []
    residual: list[Scalar] = [ONE]
    for g, k in upoly.squarefree_decomposition(f):
        rs, rest = _roots_squarefree(g)
        roots.extend((r, k) for r in rs)
        if len(rest) > 1:
            residual = upoly.mul(residual, _pow(upoly.monic(rest), k))
    roots.sort(key=lambda rk: rk[0].sort_key())
    return roots, residual


def _pow(p, k):
    out = [ONE]
    for _ in range(k):
        out = upoly.mul(out, p)
    return out


@dataclass(frozen=True)
class LinearFactorization:
    const: Scalar
    mu_power: int
    roots: tuple[tuple[Scalar, int], ...]  # (x, multiplicity) for (mu*x + lam)**mult
    residual: HomoPoly2

    @property
    def fully_factored(self) -> bool:
        return self.residual.degree == 0

    def expand(self) -> HomoPoly2:
        out = HomoPoly2.mu() ** self.mu_power
        for x, k in self.roots:
            out = out * HomoPoly2.linear(x) ** k
        return (out * self.residual).scale(self.const)


def hpoly_linear_factorization(p: HomoPoly2) -> LinearFactorization:
    """Split ``p`` into ``c * mu**a * prod (mu*x + lam)**k * residual``."""
    if p.is_zero():
        raise ZeroPolynomial("cannot factor the zero polynomial")
    a = p.mu_power()
    f = p.dehomogenize()
    const = f[-1]
    lam_roots, residual = gaussian_rational_roots(f)
    # root lam = -x of p(1, lam) is the factor (x + lam)
    roots = tuple(sorted(((-r, k) for r, k in lam_roots), key=lambda rk: rk[0].sort_key()))
    res = HomoPoly2.from_dehomogenized(residual, upoly.degree(residual))
    return LinearFactorization(const, a, roots, res)
