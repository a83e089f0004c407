"""Strict-equivalence invariants of matrix pencils ``mu*R + lam*S``.

The invariants computed here are the normal rank, the invariant polynomials
``E_i = D_i / D_{i-1}``, their prime-power split into finite and infinite
elementary divisors, and the right/left minimal indices.  Together they form
a complete invariant for strict equivalence (Kronecker).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from . import upoly
from .errors import DimensionMismatch, IrrationalSpectrum
from .hpoly import (
    HomoPoly2,
    ProjectivePoint,
    gaussian_rational_roots,
    hpoly_gcd,
)
from .matrix import Matrix, rank
from .scalar import ONE, ZERO, Scalar, as_scalar

__all__ = [
    "Pencil",
    "KroneckerInvariants",
    "normal_rank",
    "invariant_polynomials",
    "invariant_polynomials_by_minors",
    "elementary_divisors",
    "minimal_indices",
    "kronecker_invariants",
]


class Pencil:
    """The pencil ``mu*R + lam*S`` of two equal-shape matrices."""

    __slots__ = ("R", "S")

    def __init__(self, R, S):
        R = R if isinstance(R, Matrix) else Matrix(R)
        S = S if isinstance(S, Matrix) else Matrix(S)
        if R.shape != S.shape:
            raise DimensionMismatch(f"R is {R.shape} but S is {S.shape}")
        self.R = R
        self.S = S

    @property
    def shape(self) -> tuple[int, int]:
        return self.R.shape

    @property
    def m(self) -> int:
        return self.R.rows

    @property
    def n(self) -> int:
        return self.R.cols

    @property
    def T(self) -> "Pencil":
        return Pencil(self.R.T, self.S.T)

    def at(self, mu, lam) -> Matrix:
        """The scalar matrix ``mu*R + lam*S``."""
        return self.R.scale(mu) + self.S.scale(lam)

    def transform(self, B: Matrix, C: Matrix) -> "Pencil":
        """``B (mu R + lam S) C^T``."""
        Ct = C.T
        return Pencil(B @ self.R @ Ct, B @ self.S @ Ct)

    def is_zero(self) -> bool:
        return self.R.is_zero() and self.S.is_zero()

    def entry(self, i: int, j: int) -> HomoPoly2:
        return HomoPoly2([self.R[i, j], self.S[i, j]])

    def __eq__(self, other):
        if not isinstance(other, Pencil):
            return NotImplemented
        return self.R == other.R and self.S == other.S

    def __hash__(self):
        return hash((self.R, self.S))

    def __repr__(self):
        return f"Pencil(R={self.R!r}, S={self.S!r})"


@dataclass(frozen=True)
class KroneckerInvariants:
    """Complete strict-equivalence invariant of a pencil.

    ``finite`` is a tuple of ``(x, degrees)`` pairs sorted by the canonical
    order of ``x``; ``infinite`` holds the nonzero degrees of the ``mu``-power
    divisors.  All multisets are stored as ascending tuples.
    """

    normal_rank: int
    right: tuple[int, ...] = ()
    left: tuple[int, ...] = ()
    finite: tuple[tuple[Scalar, tuple[int, ...]], ...] = ()
    infinite: tuple[int, ...] = ()

    @classmethod
    def build(
        cls,
        normal_rank: int,
        right: Iterable[int] = (),
        left: Iterable[int] = (),
        finite: Mapping | Iterable = (),
        infinite: Iterable[int] = (),
    ) -> "KroneckerInvariants":
        items = finite.items() if isinstance(finite, Mapping) else finite
        merged: dict[Scalar, list[int]] = {}
        for x, degs in items:
            degs = [d for d in degs if d > 0]
            if degs:
                merged.setdefault(as_scalar(x), []).extend(degs)
        fin = tuple(
            sorted(((x, tuple(sorted(d))) for x, d in merged.items()), key=lambda t: t[0].sort_key())
        )
        return cls(
            normal_rank,
            tuple(sorted(right)),
            tuple(sorted(left)),
            fin,
            tuple(sorted(d for d in infinite if d > 0)),
        )

    @property
    def finite_map(self) -> dict[Scalar, tuple[int, ...]]:
        return dict(self.finite)

    @property
    def zero_index(self) -> int:
        """g: number of zero right minimal indices."""
        return sum(1 for e in self.right if e == 0)

    @property
    def transpose_zero_index(self) -> int:
        """h: number of zero left minimal indices."""
        return sum(1 for v in self.left if v == 0)

    @property
    def regular_size(self) -> int:
        return sum(sum(d) for _, d in self.finite) + sum(self.infinite)

    def points(self) -> list[tuple[ProjectivePoint, tuple[int, ...]]]:
        """Divisor points with their degree signatures, infinity last."""
        pts = [(ProjectivePoint(x), d) for x, d in self.finite]
        if self.infinite:
            pts.append((ProjectivePoint(None), self.infinite))
        return pts

    def shape(self) -> tuple[int, int]:
        """``(m, n)`` implied by the block sizes of the canonical form."""
        m = self.transpose_zero_index + sum(e for e in self.right) + sum(v + 1 for v in self.left if v > 0)
        n = self.zero_index + sum(e + 1 for e in self.right if e > 0) + sum(self.left)
        l = self.regular_size
        return m + l, n + l

    def check(self, m: int, n: int) -> None:
        """Raise DimensionMismatch unless the bookkeeping identities hold."""
        r = self.normal_rank
        if len(self.right) != n - r or len(self.left) != m - r:
            raise DimensionMismatch(
                f"{len(self.right)} right / {len(self.left)} left indices do not fit rank {r} in {m}x{n}"
            )
        if sum(self.right) + sum(self.left) + self.regular_size != r:
            raise DimensionMismatch("block sizes do not add up to the normal rank")
        if self.shape() != (m, n):
            raise DimensionMismatch(f"blocks fill {self.shape()}, expected {(m, n)}")

    def invariant_polynomials(self) -> list[HomoPoly2]:
        """Rebuild ``E_1 .. E_r`` from the divisors."""
        r = self.normal_rank
        polys = [HomoPoly2.one() for _ in range(r)]
        for x, degs in self.finite:
            for k, d in enumerate(sorted(degs, reverse=True)):
                polys[r - 1 - k] = polys[r - 1 - k] * HomoPoly2.linear(x) ** d
        for k, d in enumerate(sorted(self.infinite, reverse=True)):
            polys[r - 1 - k] = polys[r - 1 - k] * HomoPoly2.mu() ** d
        return [p.normalize() for p in polys]


# ---------------------------------------------------------------------------
# normal rank


def normal_rank(P: Pencil) -> int:
    """Largest r with a nonzero r-minor, by exact sampling.

    Every minor has degree at most ``min(m, n)``, so a minor that vanishes at
    ``min(m, n) + 2`` distinct points ``(1, t)`` is identically zero.
    """
    m, n = P.shape
    if m == 0 or n == 0:
        return 0
    cap = min(m, n)
    best = 0
    for t in range(cap + 2):
        best = max(best, rank(P.at(ONE, Scalar(t))))
        if best == cap:
            break
    return best


# ---------------------------------------------------------------------------
# invariant polynomials


def _smith_factors(mat: list[list[list[Scalar]]]) -> list[list[Scalar]]:
    """Nonzero monic invariant factors of a polynomial matrix over K[x]."""
    a = [[list(p) for p in row] for row in mat]
    m = len(a)
    n = len(a[0]) if a else 0
    factors = []
    t = 0
    while t < m and t < n:
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if a[i][j] and (best is None or len(a[i][j]) < best[0]):
                    best = (len(a[i][j]), i, j)
                    if best[0] == 1:
                        break
            if best and best[0] == 1:
                break
        if best is None:
            break
        _, pi, pj = best
        a[t], a[pi] = a[pi], a[t]
        for row in a:
            row[t], row[pj] = row[pj], row[t]
        while True:
            piv = a[t][t]
            moved = False
            for i in range(t + 1, m):
                if a[i][t]:
                    q, r = upoly.divmod_(a[i][t], piv)
                    if q:
                        a[i] = [upoly.sub(x, upoly.mul(q, y)) for x, y in zip(a[i], a[t])]
                    if r:
                        a[t], a[i] = a[i], a[t]
                        moved = True
                        break
            if moved:
                continue
            for j in range(t + 1, n):
                if a[t][j]:
                    q, r = upoly.divmod_(a[t][j], piv)
                    if q:
                        for row in a:
                            row[j] = upoly.sub(row[j], upoly.mul(q, row[t]))
                    if r:
                        for row in a:
                            row[t], row[j] = row[j], row[t]
                        moved = True
                        break
            if moved:
                continue
            bad = None
            if len(piv) > 1:
                for i in range(t + 1, m):
                    for j in range(t + 1, n):
                        if a[i][j] and upoly.divmod_(a[i][j], piv)[1]:
                            bad = i
                            break
                    if bad is not None:
                        break
            if bad is None:
                break
            a[t] = [upoly.add(x, y) for x, y in zip(a[t], a[bad])]
        factors.append(upoly.monic(a[t][t]))
        t += 1
    return factors


def _pencil_poly_matrix(first: Matrix, second: Matrix) -> list[list[list[Scalar]]]:
    """Entries ``first + x*second`` as univariate coefficient lists."""
    return [
        [upoly.trim([first[i, j], second[i, j]]) for j in range(first.cols)]
        for i in range(first.rows)
    ]


def _valuation(p: list[Scalar]) -> int:
    return next(k for k, c in enumerate(p) if not c.is_zero())


def _split_invariant_factors(P: Pencil) -> tuple[list[list[Scalar]], list[int]]:
    finite = _smith_factors(_pencil_poly_matrix(P.R, P.S))  # in lam, mu = 1
    at_inf = _smith_factors(_pencil_poly_matrix(P.S, P.R))  # in mu, lam = 1
    if len(finite) != len(at_inf):
        raise AssertionError("rank mismatch between dehomogenizations")
    return finite, [_valuation(f) for f in at_inf]


def invariant_polynomials(P: Pencil) -> list[HomoPoly2]:
    """``E_1, ..., E_r`` (normalized), via Smith forms of both dehomogenizations.

    ``D_i(1, lam)`` is the gcd of the i-minors of ``R + lam*S`` and the
    ``mu``-adic valuation of ``D_i`` is read off ``mu*R + S``; both come out
    of polynomial Gaussian elimination.
    """
    finite, vals = _split_invariant_factors(P)
    return [
        (HomoPoly2.mu() ** v * HomoPoly2.from_dehomogenized(f, upoly.degree(f))).normalize()
        for f, v in zip(finite, vals)
    ]


def _det_poly(rows: list[list[HomoPoly2]]) -> HomoPoly2:
    k = len(rows)
    if k == 1:
        return rows[0][0]
    total = HomoPoly2.zero()
    for j in range(k):
        if rows[0][j].is_zero():
            continue
        minor = [r[:j] + r[j + 1:] for r in rows[1:]]
        term = rows[0][j] * _det_poly(minor)
        total = total + (term if j % 2 == 0 else -term)
    return total


def invariant_polynomials_by_minors(P: Pencil) -> list[HomoPoly2]:
    """Definition-level route: GCD of all i-minors, then successive quotients.

    Exponential in the size; intended for small pencils and cross-checks.
    """
    m, n = P.shape
    entries = [[P.entry(i, j) for j in range(n)] for i in range(m)]
    ds = [HomoPoly2.one()]
    for k in range(1, min(m, n) + 1):
        g = HomoPoly2.zero()
        for rows in combinations(range(m), k):
            for cols in combinations(range(n), k):
                minor = _det_poly([[entries[i][j] for j in cols] for i in rows])
                if not minor.is_zero():
                    g = hpoly_gcd(g, minor)
                    if g.degree == 0:
                        break
            if not g.is_zero() and g.degree == 0:
                break
        if g.is_zero():
            break
        ds.append(g)
    return [ds[i].exact_div(ds[i - 1]).normalize() for i in range(1, len(ds))]


# ---------------------------------------------------------------------------
# elementary divisors


def _multiplicity(f: list[Scalar], x: Scalar) -> int:
    k = 0
    lin = [x, ONE]  # x + lam
    while len(f) > 1:
        q, r = upoly.divmod_(f, lin)
        if r:
            break
        f = q
        k += 1
    return k


def _divisors_from_factors(finite: list[list[Scalar]], vals: list[int]):
    fmap: dict[Scalar, list[int]] = {}
    if finite and len(finite[-1]) > 1:
        roots, residual = gaussian_rational_roots(finite[-1])
        if len(residual) > 1:
            res = HomoPoly2.from_dehomogenized(residual, upoly.degree(residual))
            raise IrrationalSpectrum(res)
        for lam_root, _ in roots:
            x = -lam_root
            degs = [d for d in (_multiplicity(f, x) for f in finite) if d > 0]
            fmap[x] = degs
    return fmap, [v for v in vals if v > 0]


def elementary_divisors(P: Pencil) -> tuple[dict[Scalar, tuple[int, ...]], tuple[int, ...]]:
    """Finite divisors grouped by point ``x`` of ``(mu*x + lam)``, and infinite degrees.

    Raises IrrationalSpectrum if an invariant polynomial keeps a factor with
    no Gaussian-rational root.
    """
    finite, vals = _split_invariant_factors(P)
    fmap, inf = _divisors_from_factors(finite, vals)
    return (
        {x: tuple(sorted(d)) for x, d in sorted(fmap.items(), key=lambda t: t[0].sort_key())},
        tuple(sorted(inf)),
    )


# ---------------------------------------------------------------------------
# minimal indices


def _band_matrix(R: Matrix, S: Matrix, d: int) -> Matrix:
    m, n = R.shape
    rows = [[ZERO] * ((d + 1) * n) for _ in range((d + 2) * m)]
    for j in range(d + 1):
        for i in range(m):
            rrow = R.row(i)
            srow = S.row(i)
            top = rows[j * m + i]
            bot = rows[(j + 1) * m + i]
            for c in range(n):
                top[j * n + c] = rrow[c]
                bot[j * n + c] = srow[c]
    return Matrix._wrap(rows, (d + 1) * n)


def _right_indices(R: Matrix, S: Matrix, count: int) -> list[int]:
    n = R.cols
    found: list[int] = []
    k_prev2 = k_prev = 0
    d = 0
    while len(found) < count:
        k = (d + 1) * n - rank(_band_matrix(R, S, d))
        c = k - 2 * k_prev + k_prev2
        found.extend([d] * c)
        k_prev2, k_prev = k_prev, k
        d += 1
    return found


def minimal_indices(P: Pencil, r: int | None = None) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Right and left minimal indices from kernel dimensions of band matrices.

    With ``T_d`` the block band matrix of the degree-``d`` kernel equations,
    ``dim ker T_d = sum_i max(0, d - eps_i + 1)``; its second difference counts
    indices equal to ``d``.
    """
    m, n = P.shape
    if r is None:
        r = normal_rank(P)
    right = _right_indices(P.R, P.S, n - r)
    left = _right_indices(P.R.T, P.S.T, m - r)
    return tuple(right), tuple(left)


def kronecker_invariants(P: Pencil) -> KroneckerInvariants:
    r = normal_rank(P)
    right, left = minimal_indices(P, r)
    # the minimal indices already fix the total divisor degree
    if r - sum(right) - sum(left) == 0:
        return KroneckerInvariants.build(r, right, left)
    fmap, inf = elementary_divisors(P)
    inv = KroneckerInvariants.build(r, right, left, fmap, inf)
    if sum(right) + sum(left) + inv.regular_size != r:
        raise AssertionError("divisor degrees do not match the minimal indices")
    return inv
