"""States of ``2 x m x n`` systems and their SLOCC equivalence.

A state ``|0>|R> + |1>|S>`` is identified with the pencil ``mu R + lam S``.
Alice's invertible operator ``A = [[a, b], [c, d]]`` acts on the pencil by
``R' = a R + c S``, ``S' = b R + d S``, which moves every divisor point by the
Moebius map ``x -> (a x + c) / (b x + d)``.  Bob and Charlie act by strict
equivalence ``R -> B R C^T``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations

from .errors import DegenerateTriple, DimensionMismatch
from .invariants import KroneckerInvariants, Pencil, kronecker_invariants, minimal_indices
from .kronecker import strict_equiv
from .matrix import Matrix, rank
from .scalar import ONE, ZERO, Scalar, as_scalar

__all__ = [
    "State",
    "LFT",
    "SloccWitness",
    "Equivalent",
    "NotSloccEquivalent",
    "state_to_pencil",
    "pencil_to_state",
    "local_ranks",
    "apply_slocc",
    "transform_invariants",
    "regularizing_lft",
    "lft_from_three_pairs",
    "slocc_equivalent",
    "witness_maps",
    "ghz_state",
    "w_state",
]


@dataclass(frozen=True)
class State:
    """Amplitudes ``a[i][j][k]`` with ``R[j][k] = a[0][j][k]`` and ``S[j][k] = a[1][j][k]``."""

    R: Matrix
    S: Matrix

    def __post_init__(self):
        if self.R.shape != self.S.shape:
            raise DimensionMismatch(f"slices of shape {self.R.shape} and {self.S.shape}")
        if self.R.is_zero() and self.S.is_zero():
            raise ValueError("the zero vector is not a state")

    @classmethod
    def from_amplitudes(cls, amps) -> "State":
        if len(amps) != 2:
            raise DimensionMismatch("first tensor factor must have dimension 2")
        return cls(Matrix(amps[0]), Matrix(amps[1]))

    @property
    def m(self) -> int:
        return self.R.rows

    @property
    def n(self) -> int:
        return self.R.cols

    @property
    def dims(self) -> tuple[int, int, int]:
        return (2, self.m, self.n)

    def amplitude(self, i: int, j: int, k: int) -> Scalar:
        return (self.R, self.S)[i][j, k]

    @property
    def amplitudes(self) -> list[list[list[Scalar]]]:
        return [self.R.tolist(), self.S.tolist()]

    def scale(self, c) -> "State":
        return State(self.R.scale(c), self.S.scale(c))

    def proportional_to(self, other: "State") -> Scalar | None:
        """The factor ``c`` with ``self = c * other``, if there is one."""
        if self.dims != other.dims:
            return None
        factor = None
        for x, y in zip(self.R.entries + self.S.entries, other.R.entries + other.S.entries):
            if y.is_zero():
                if not x.is_zero():
                    return None
                continue
            q = x / y
            if factor is None:
                factor = q
            elif q != factor:
                return None
        return factor


def _basis_state(m: int, n: int, terms) -> State:
    a = [[[ZERO] * n for _ in range(m)] for _ in range(2)]
    for i, j, k in terms:
        a[i][j][k] = ONE
    return State.from_amplitudes(a)


def ghz_state() -> State:
    return _basis_state(2, 2, [(0, 0, 0), (1, 1, 1)])


def w_state() -> State:
    return _basis_state(2, 2, [(0, 0, 1), (0, 1, 0), (1, 0, 0)])


def state_to_pencil(s: State) -> Pencil:
    return Pencil(s.R, s.S)


def pencil_to_state(P: Pencil) -> State:
    return State(P.R, P.S)


def local_ranks(s: State) -> tuple[int, int, int]:
    """``(rA, rB, rC)``: ``rA`` is the dimension of span{R, S}; ``rB = m - h``, ``rC = n - g``."""
    rA = rank(Matrix._wrap([list(s.R.entries), list(s.S.entries)], s.m * s.n))
    right, left = minimal_indices(state_to_pencil(s))
    g = sum(1 for e in right if e == 0)
    h = sum(1 for v in left if v == 0)
    return rA, s.m - h, s.n - g


# ---------------------------------------------------------------------------
# local operators


@dataclass(frozen=True)
class LFT:
    """Moebius map ``x -> (a x + c) / (b x + d)``; as Alice's matrix ``[[a, b], [c, d]]``."""

    a: Scalar
    b: Scalar
    c: Scalar
    d: Scalar

    def __post_init__(self):
        for f in "abcd":
            object.__setattr__(self, f, as_scalar(getattr(self, f)))
        if (self.a * self.d - self.b * self.c).is_zero():
            raise ValueError("LFT must have ad - bc != 0")

    @classmethod
    def identity(cls) -> "LFT":
        return cls(ONE, ZERO, ZERO, ONE)

    @classmethod
    def from_matrix(cls, A: Matrix) -> "LFT":
        return cls(A[0, 0], A[0, 1], A[1, 0], A[1, 1])

    def matrix(self) -> Matrix:
        return Matrix._wrap([[self.a, self.b], [self.c, self.d]], 2)

    def normalized(self) -> "LFT":
        lead = next(x for x in (self.a, self.b, self.c, self.d) if not x.is_zero())
        inv = lead.inverse()
        return LFT(self.a * inv, self.b * inv, self.c * inv, self.d * inv)

    def __call__(self, x: Scalar | None) -> Scalar | None:
        """Image of a projective point; ``None`` stands for infinity."""
        if x is None:
            return None if self.b.is_zero() else self.a / self.b
        den = self.b * x + self.d
        if den.is_zero():
            return None
        return (self.a * x + self.c) / den

    def then(self, other: "LFT") -> "LFT":
        """Apply ``self`` first, then ``other``."""
        return LFT.from_matrix(self.matrix() @ other.matrix())

    def inverse(self) -> "LFT":
        return LFT.from_matrix(self.matrix().inverse())

    def as_tuple(self) -> tuple[Scalar, Scalar, Scalar, Scalar]:
        return (self.a, self.b, self.c, self.d)


@dataclass(frozen=True)
class SloccWitness:
    """Local operators; see :func:`apply_slocc` for how they act."""

    A: Matrix
    B: Matrix
    C: Matrix

    @classmethod
    def identity(cls, m: int, n: int) -> "SloccWitness":
        return cls(Matrix.identity(2), Matrix.identity(m), Matrix.identity(n))

    @classmethod
    def alice(cls, t: LFT, m: int, n: int) -> "SloccWitness":
        return cls(t.matrix(), Matrix.identity(m), Matrix.identity(n))

    def then(self, other: "SloccWitness") -> "SloccWitness":
        """Witness of applying ``self`` and then ``other``."""
        return SloccWitness(self.A @ other.A, other.B @ self.B, other.C @ self.C)

    def inverse(self) -> "SloccWitness":
        return SloccWitness(self.A.inverse(), self.B.inverse(), self.C.inverse())

    def is_invertible(self) -> bool:
        return all(not M.det().is_zero() for M in (self.A, self.B, self.C))


def apply_slocc(s: State, w: SloccWitness) -> State:
    """``R' = a B R C^T + c B S C^T`` and ``S' = b B R C^T + d B S C^T``."""
    if w.A.shape != (2, 2) or w.B.shape != (s.m, s.m) or w.C.shape != (s.n, s.n):
        raise DimensionMismatch("witness does not match the state dimensions")
    Ct = w.C.T
    R = w.B @ s.R @ Ct
    S = w.B @ s.S @ Ct
    a, b, c, d = w.A[0, 0], w.A[0, 1], w.A[1, 0], w.A[1, 1]
    return State(R.scale(a) + S.scale(c), R.scale(b) + S.scale(d))


def witness_maps(src: State, dst: State, w: SloccWitness) -> bool:
    """True if ``w`` sends ``src`` to a nonzero multiple of ``dst``."""
    if not w.is_invertible():
        return False
    try:
        image = apply_slocc(src, w)
    except DimensionMismatch:
        return False
    return image.proportional_to(dst) is not None


# ---------------------------------------------------------------------------
# Alice's action on invariants


def transform_invariants(inv: KroneckerInvariants, t: LFT) -> KroneckerInvariants:
    """Invariants after Alice applies ``t``; minimal indices are unchanged."""
    finite: dict[Scalar, list[int]] = {}
    infinite: list[int] = []
    moved = [(x, degs) for x, degs in inv.finite]
    if inv.infinite:
        moved.append((None, inv.infinite))
    for x, degs in moved:
        y = t(x)
        if y is None:
            infinite.extend(degs)
        else:
            finite.setdefault(y, []).extend(degs)
    return KroneckerInvariants.build(inv.normal_rank, inv.right, inv.left, finite, infinite)


def regularizing_lft(inv: KroneckerInvariants) -> LFT:
    """First ``(1, 1, 0, d)``, ``d = 1, 2, ...``, leaving no divisor at infinity."""
    xs = {x for x, _ in inv.finite}
    d = 1
    while -Scalar(d) in xs:
        d += 1
    return LFT(ONE, ONE, ZERO, Scalar(d))


def _det3(rows) -> Scalar:
    (a, b, c), (d, e, f), (g, h, i) = rows
    return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)


def lft_from_three_pairs(pairs) -> LFT:
    """The unique LFT with ``t(x_k) = y_k`` for three finite pairs, normalized."""
    if len(pairs) != 3:
        raise ValueError("exactly three point pairs are required")
    xs = [as_scalar(p[0]) for p in pairs]
    ys = [as_scalar(p[1]) for p in pairs]
    if len(set(xs)) < 3 or len(set(ys)) < 3:
        raise DegenerateTriple("source and target points must be pairwise distinct")
    a = _det3([(x * y, y, ONE) for x, y in zip(xs, ys)])
    b = _det3([(x, y, ONE) for x, y in zip(xs, ys)])
    c = _det3([(x * y, x, y) for x, y in zip(xs, ys)])
    d = _det3([(x * y, x, ONE) for x, y in zip(xs, ys)])
    return LFT(a, b, c, d).normalized()


# ---------------------------------------------------------------------------
# equivalence decision


@dataclass(frozen=True)
class Equivalent:
    witness: SloccWitness

    def __bool__(self):
        return True


@dataclass(frozen=True)
class NotSloccEquivalent:
    reason: str

    def __bool__(self):
        return False


def _signature_multiset(points):
    return sorted(sig for _, sig in points)


def _pad_points(used: set, count: int) -> list[Scalar]:
    out = []
    k = 0
    while len(out) < count:
        x = Scalar(k)
        if x not in used:
            out.append(x)
        k += 1
    return out


def _matching_lft(src, dst) -> LFT | None:
    """An LFT carrying the finite points ``src`` onto ``dst`` preserving signatures."""
    if len(src) < 3:
        s_sorted = sorted(src, key=lambda p: (p[1], p[0].sort_key()))
        d_sorted = sorted(dst, key=lambda p: (p[1], p[0].sort_key()))
        pairs = [(x, y) for (x, _), (y, _) in zip(s_sorted, d_sorted)]
        if not pairs:
            return LFT.identity()
        extra = 3 - len(pairs)
        xs = _pad_points({x for x, _ in pairs}, extra)
        ys = _pad_points({y for _, y in pairs}, extra)
        return lft_from_three_pairs(pairs + list(zip(xs, ys)))
    target = dict(dst)
    fixed = src[:3]
    for trio in permutations(dst, 3):
        if any(sig_y != sig_x for (_, sig_x), (_, sig_y) in zip(fixed, trio)):
            continue
        t = lft_from_three_pairs([(x, y) for (x, _), (y, _) in zip(fixed, trio)])
        if all(target.get(t(x)) == sig for x, sig in src):
            return t
    return None


def slocc_equivalent(s1: State, s2: State):
    """Decide SLOCC equivalence; returns :class:`Equivalent` with a verified witness
    or :class:`NotSloccEquivalent` naming the obstruction."""
    if s1.dims != s2.dims:
        raise DimensionMismatch(f"states of dimensions {s1.dims} and {s2.dims}")
    m, n = s1.m, s1.n
    inv1 = kronecker_invariants(state_to_pencil(s1))
    inv2 = kronecker_invariants(state_to_pencil(s2))
    if inv1.normal_rank != inv2.normal_rank:
        return NotSloccEquivalent("normal rank")
    if inv1.right != inv2.right:
        return NotSloccEquivalent("right minimal indices")
    if inv1.left != inv2.left:
        return NotSloccEquivalent("left minimal indices")
    t1, t2 = regularizing_lft(inv1), regularizing_lft(inv2)
    pts1 = list(transform_invariants(inv1, t1).finite)
    pts2 = list(transform_invariants(inv2, t2).finite)
    if _signature_multiset(pts1) != _signature_multiset(pts2):
        return NotSloccEquivalent("elementary divisors")
    phi = _matching_lft(pts1, pts2)
    if phi is None:
        return NotSloccEquivalent("no LFT matches")
    alice1 = t1.then(phi)
    q1 = apply_slocc(s1, SloccWitness.alice(alice1, m, n))
    q2 = apply_slocc(s2, SloccWitness.alice(t2, m, n))
    se = strict_equiv(state_to_pencil(q1), state_to_pencil(q2))
    if not se:
        raise AssertionError(f"matched invariants but pencils differ in {se.reason}")
    w = SloccWitness((alice1.then(t2.inverse())).matrix(), se.B, se.C)
    if not witness_maps(s1, s2, w):
        raise AssertionError("SLOCC witness failed to verify")
    return Equivalent(w)
