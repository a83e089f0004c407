"""Seeded random generators for exact test corpora.

All draws go through a :class:`random.Random` instance so that corpora are
reproducible from a seed.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .invariants import KroneckerInvariants
from .matrix import Matrix
from .scalar import Scalar


def random_scalar(rng: random.Random, bound: int = 3, complex_prob: float = 0.25,
                  allow_zero: bool = True) -> Scalar:
    while True:
        re_ = Fraction(rng.randint(-bound, bound), rng.choice((1, 1, 1, 2, 3)))
        im_ = Fraction(0)
        if rng.random() < complex_prob:
            im_ = Fraction(rng.randint(-bound, bound), rng.choice((1, 1, 2)))
        s = Scalar(re_, im_)
        if allow_zero or not s.is_zero():
            return s


def random_matrix(rng: random.Random, rows: int, cols: int, **kw) -> Matrix:
    return Matrix([[random_scalar(rng, **kw) for _ in range(cols)] for _ in range(rows)])


def random_invertible(rng: random.Random, n: int, **kw) -> Matrix:
    while True:
        M = random_matrix(rng, n, n, **kw)
        if not M.det().is_zero():
            return M


def random_invariants(rng: random.Random, max_m: int, max_n: int, max_points: int | None = None,
                      finite_only: bool = False, max_tries: int = 50) -> KroneckerInvariants:
    """Random block structure fitting inside ``max_m x max_n`` (nonzero pencil).

    ``max_points`` bounds the number of distinct divisor points (infinity
    counts as one); ``finite_only`` suppresses infinite divisors.
    """
    while True:
        right: list[int] = []
        left: list[int] = []
        finite: dict[Scalar, list[int]] = {}
        infinite: list[int] = []
        m = n = 0
        for _ in range(max_tries):
            kind = rng.choice(("zc", "zr", "L", "LT", "N", "M", "M", "M"))
            size = rng.randint(1, 3)
            if kind == "zc":
                dm, dn = 0, 1
            elif kind == "zr":
                dm, dn = 1, 0
            elif kind == "L":
                dm, dn = size, size + 1
            elif kind == "LT":
                dm, dn = size + 1, size
            else:
                dm, dn = size, size
            if m + dm > max_m or n + dn > max_n:
                if rng.random() < 0.3:
                    break
                continue
            npts = len(finite) + (1 if infinite else 0)
            if kind == "N":
                if finite_only or (max_points is not None and not infinite and npts >= max_points):
                    continue
                infinite.append(size)
            elif kind == "M":
                if finite and (rng.random() < 0.35 or (max_points is not None and npts >= max_points)):
                    x = rng.choice(sorted(finite, key=lambda s: s.sort_key()))
                elif max_points is not None and npts >= max_points:
                    continue
                else:
                    x = random_scalar(rng)
                finite.setdefault(x, []).append(size)
            elif kind == "zc":
                right.append(0)
            elif kind == "zr":
                left.append(0)
            elif kind == "L":
                right.append(size)
            else:
                left.append(size)
            m += dm
            n += dn
        r = sum(right) + sum(left) + sum(infinite) + sum(sum(v) for v in finite.values())
        if r == 0:
            continue
        return KroneckerInvariants.build(r, right, left, finite, infinite)
