"""Univariate polynomials over the Gaussian rationals as coefficient lists.

A polynomial is a list ``c`` with ``c[k]`` the coefficient of ``x**k``.  The
zero polynomial is the empty list; every other list has a nonzero last entry.
These helpers back both the homogeneous polynomials and the polynomial Smith
form used for invariant factors.
"""

from __future__ import annotations

from typing import Sequence

from .scalar import ONE, ZERO, Scalar

Poly = list  # list[Scalar]


def trim(p: Sequence[Scalar]) -> Poly:
    p = list(p)
    while p and p[-1].is_zero():
        p.pop()
    return p


def degree(p: Poly) -> int:
    return len(p) - 1  # -1 for zero


def add(p: Poly, q: Poly) -> Poly:
    if len(p) < len(q):
        p, q = q, p
    out = list(p)
    for k, c in enumerate(q):
        out[k] = out[k] + c
    return trim(out)


def sub(p: Poly, q: Poly) -> Poly:
    out = list(p) + [ZERO] * max(0, len(q) - len(p))
    for k, c in enumerate(q):
        out[k] = out[k] - c
    return trim(out)


def scale(p: Poly, c: Scalar) -> Poly:
    if c.is_zero():
        return []
    return [c * x for x in p]


def mul(p: Poly, q: Poly) -> Poly:
    if not p or not q:
        return []
    out = [ZERO] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a.is_zero():
            continue
        for j, b in enumerate(q):
            if not b.is_zero():
                out[i + j] = out[i + j] + a * b
    return trim(out)


def divmod_(p: Poly, q: Poly) -> tuple[Poly, Poly]:
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(p)
    dq = len(q) - 1
    if len(r) - 1 < dq:
        return [], trim(r)
    inv_lead = q[-1].inverse()
    quo = [ZERO] * (len(r) - dq)
    for k in range(len(r) - 1, dq - 1, -1):
        c = r[k]
        if c.is_zero():
            continue
        f = c * inv_lead
        quo[k - dq] = f
        for j in range(dq + 1):
            if not q[j].is_zero():
                r[k - dq + j] = r[k - dq + j] - f * q[j]
    return trim(quo), trim(r[:dq])


def exact_div(p: Poly, q: Poly) -> Poly:
    quo, rem = divmod_(p, q)
    if rem:
        raise ArithmeticError("polynomial division is not exact")
    return quo


def monic(p: Poly) -> Poly:
    if not p:
        return []
    lead = p[-1]
    if lead == ONE:
        return list(p)
    inv = lead.inverse()
    return [c * inv for c in p]


def gcd(p: Poly, q: Poly) -> Poly:
    """Monic greatest common divisor; ``gcd(0, 0) = 0``."""
    a, b = trim(p), trim(q)
    while b:
        a, b = b, divmod_(a, b)[1]
    return monic(a)


def derivative(p: Poly) -> Poly:
    return trim([c * k for k, c in enumerate(p)][1:])


def evaluate(p: Poly, x: Scalar) -> Scalar:
    acc = ZERO
    for c in reversed(p):
        acc = acc * x + c
    return acc


def squarefree_decomposition(p: Poly) -> list[tuple[Poly, int]]:
    """Yun's algorithm: monic ``p = prod g_k**k`` with squarefree coprime ``g_k``."""
    p = monic(trim(p))
    if len(p) <= 1:
        return []
    out = []
    dp = derivative(p)
    a = gcd(p, dp)
    b = exact_div(p, a)
    c = exact_div(dp, a)
    d = sub(c, derivative(b))
    k = 1
    while len(b) > 1:
        g = gcd(b, d)
        if len(g) > 1:
            out.append((g, k))
        b = exact_div(b, g)
        c = exact_div(d, g)
        d = sub(c, derivative(b))
        k += 1
    return out


def from_roots(roots: Sequence[Scalar]) -> Poly:
    """``prod (x - r)``."""
    p: Poly = [ONE]
    for r in roots:
        p = mul(p, [-r, ONE])
    return p
