"""Finite SLOCC classes, tensor rank and non-invertible convertibility.

Classes are described by normalized Kronecker data: after pushing all
divisors to finite points, the distinct points are renamed ``0, 1, 2`` in
signature order.  With at most three points this is a complete invariant,
since Moebius maps act 3-transitively on the projective line.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product

from .errors import IrrationalSpectrum, KronSloccError
from .invariants import (
    KroneckerInvariants,
    Pencil,
    kronecker_invariants,
    minimal_indices,
    normal_rank,
)
from .kronecker import canonical_pencil, reduce_to_canonical
from .matrix import Matrix, rank
from .scalar import ONE, ZERO, Scalar
from .slocc import (
    State,
    local_ranks,
    pencil_to_state,
    regularizing_lft,
    slocc_equivalent,
    state_to_pencil,
    transform_invariants,
)

__all__ = [
    "ClassDescriptor",
    "Catalogue",
    "InfiniteFamilies",
    "UnboundedModuli",
    "Convertible",
    "Obstructed",
    "Undecided",
    "LocalMap",
    "Hierarchy",
    "tensor_rank",
    "tensor_rank_of_invariants",
    "normalize_invariants",
    "enumerate_classes",
    "classify",
    "convertibility",
    "check_modification",
    "hierarchy",
]


class UnboundedModuli(KronSloccError, ValueError):
    """The state has four or more distinct divisor points (a continuous family)."""


# ---------------------------------------------------------------------------
# tensor rank


def tensor_rank_of_invariants(inv: KroneckerInvariants) -> int:
    """Tensor rank from Kronecker data; zero minimal indices only pad and add nothing."""
    reg = transform_invariants(inv, regularizing_lft(inv))
    l = reg.regular_size
    delta = max((sum(1 for e in degs if e >= 2) for _, degs in reg.finite), default=0)
    return sum(e + 1 for e in reg.right if e > 0) + sum(v + 1 for v in reg.left if v > 0) + l + delta


def tensor_rank(s: State) -> int:
    return tensor_rank_of_invariants(kronecker_invariants(state_to_pencil(s)))


# ---------------------------------------------------------------------------
# descriptors


def _sig_key(sig: tuple[int, ...]):
    return (-sum(sig), tuple(sorted(sig, reverse=True)))


def normalize_invariants(inv: KroneckerInvariants) -> KroneckerInvariants:
    """Rename the divisor points ``0, 1, 2`` in signature order (after regularizing)."""
    reg = transform_invariants(inv, regularizing_lft(inv))
    sigs = sorted((degs for _, degs in reg.finite), key=_sig_key)
    if len(sigs) > 3:
        raise UnboundedModuli(
            f"{len(sigs)} distinct divisor points; the class depends on a cross-ratio"
        )
    finite = [(Scalar(k), degs) for k, degs in enumerate(sigs)]
    return KroneckerInvariants.build(inv.normal_rank, inv.right, inv.left, finite, ())


def _core(inv: KroneckerInvariants) -> KroneckerInvariants:
    """The same structure with all zero minimal indices removed."""
    r = inv.normal_rank
    return KroneckerInvariants.build(
        r, [e for e in inv.right if e > 0], [v for v in inv.left if v > 0], inv.finite, inv.infinite
    )


def _label(inv: KroneckerInvariants) -> str:
    parts = []
    right = [e for e in inv.right if e > 0]
    left = [v for v in inv.left if v > 0]
    if right:
        parts.append("eps[" + ",".join(map(str, right)) + "]")
    if left:
        parts.append("nu[" + ",".join(map(str, left)) + "]")
    for x, degs in inv.finite:
        for e in degs:
            parts.append(f"M{e}({x})")
    return "+".join(parts) if parts else "0"


# structural names for the classes that the literature names unambiguously
_ALIASES = {
    "M1(0)": ["A:B:C"],
    "nu[1]": ["AB:C"],
    "eps[1]": ["AC:B"],
    "M1(0)+M1(0)": ["A:BC-1"],
    "M1(0)+M1(1)": ["GHZ", "ABC-1"],
    "M2(0)": ["W", "ABC-2"],
    "M1(0)+M1(0)+M1(0)": ["A:BC-2"],
}


@dataclass(frozen=True)
class ClassDescriptor:
    m: int
    n: int
    inv: KroneckerInvariants
    local_ranks: tuple[int, int, int]
    tensor_rank: int
    label: str
    aliases: tuple[str, ...] = ()

    @classmethod
    def from_invariants(cls, inv: KroneckerInvariants, m: int, n: int) -> "ClassDescriptor":
        inv = normalize_invariants(inv)
        inv.check(m, n)
        rep = pencil_to_state(canonical_pencil(inv, m, n))
        label = _label(inv)
        return cls(m, n, inv, local_ranks(rep), tensor_rank_of_invariants(inv), label,
                   tuple(_ALIASES.get(label, ())))

    def representative(self) -> State:
        return pencil_to_state(canonical_pencil(self.inv, self.m, self.n))

    @property
    def core(self) -> KroneckerInvariants:
        return _core(self.inv)

    @property
    def core_shape(self) -> tuple[int, int]:
        return (self.local_ranks[1], self.local_ranks[2])

    def sort_key(self):
        return (self.local_ranks, self.tensor_rank, self.label)


def classify(s: State) -> ClassDescriptor:
    """Normalized class descriptor of a state (raises UnboundedModuli for continuous families)."""
    inv = kronecker_invariants(state_to_pencil(s))
    return ClassDescriptor.from_invariants(inv, s.m, s.n)


# ---------------------------------------------------------------------------
# enumeration


@dataclass(frozen=True)
class Catalogue:
    m: int
    n: int
    classes: tuple[ClassDescriptor, ...]

    @property
    def count(self) -> int:
        return len(self.classes)

    def find(self, d: ClassDescriptor) -> ClassDescriptor | None:
        return next((c for c in self.classes if c == d), None)


@dataclass(frozen=True)
class InfiniteFamilies:
    m: int
    n: int
    witness: str

    def __bool__(self):
        return False


def _partitions(total: int, max_part: int | None = None):
    """Partitions of ``total`` as descending tuples."""
    max_part = total if max_part is None else max_part
    if total == 0:
        yield ()
        return
    for first in range(min(total, max_part), 0, -1):
        for rest in _partitions(total - first, first):
            yield (first,) + rest


def _index_multisets(budget_rows: int, budget_cols: int, row_cost, col_cost, smallest: int = 1):
    """Ascending index tuples whose blocks fit the given rows/cols."""
    yield ()
    e = smallest
    while row_cost(e) <= budget_rows and col_cost(e) <= budget_cols:
        for rest in _index_multisets(budget_rows - row_cost(e), budget_cols - col_cost(e),
                                     row_cost, col_cost, e):
            yield (e,) + rest
        e += 1


def _signature_sets(l: int):
    """Multisets of point signatures of total degree ``l`` (any number of points)."""
    def rec(remaining, min_key):
        if remaining == 0:
            yield ()
            return
        for size in range(1, remaining + 1):
            for sig in _partitions(size):
                key = (size, sig)
                if min_key is not None and key < min_key:
                    continue
                for rest in rec(remaining - size, key):
                    yield (tuple(sorted(sig)),) + rest
    yield from rec(l, None)


def enumerate_classes(m: int, n: int, full_rank_only: bool = False):
    """All SLOCC classes of ``2 x m x n`` states, or InfiniteFamilies."""
    found: dict[ClassDescriptor, None] = {}
    for eps in _index_multisets(m, n, lambda e: e, lambda e: e + 1):
        rows_e, cols_e = sum(eps), sum(e + 1 for e in eps)
        for nu in _index_multisets(m - rows_e, n - cols_e, lambda v: v + 1, lambda v: v):
            rows, cols = rows_e + sum(v + 1 for v in nu), cols_e + sum(nu)
            for l in range(0, min(m - rows, n - cols) + 1):
                if not eps and not nu and l == 0:
                    continue
                for sigs in _signature_sets(l):
                    if len(sigs) > 3:
                        label = _label(KroneckerInvariants.build(
                            sum(eps) + sum(nu) + l, eps, nu,
                            [(Scalar(k), s) for k, s in enumerate(sigs)], ()))
                        return InfiniteFamilies(m, n, label)
                    r = sum(eps) + sum(nu) + l
                    g, h = n - cols - l, m - rows - l
                    inv = KroneckerInvariants.build(
                        r, (0,) * g + eps, (0,) * h + nu,
                        [(Scalar(k), s) for k, s in enumerate(sigs)], ())
                    d = ClassDescriptor.from_invariants(inv, m, n)
                    if full_rank_only and d.core_shape != (m, n):
                        continue
                    found[d] = None
    classes = tuple(sorted(found, key=ClassDescriptor.sort_key))
    return Catalogue(m, n, classes)


# ---------------------------------------------------------------------------
# convertibility


@dataclass(frozen=True)
class LocalMap:
    """Possibly non-invertible local operators; acts like an SLOCC witness."""

    A: Matrix
    B: Matrix
    C: Matrix

    def apply(self, s: State) -> State:
        Ct = self.C.T
        R = self.B @ s.R @ Ct
        S = self.B @ s.S @ Ct
        a, b, c, d = self.A[0, 0], self.A[0, 1], self.A[1, 0], self.A[1, 1]
        return State(R.scale(a) + S.scale(c), R.scale(b) + S.scale(d))


@dataclass(frozen=True)
class Convertible:
    """``deleted_columns``/``deleted_rows`` index the source core; ``coefficients``
    maps ``(kind, kept, deleted)`` to the multiple of the deleted line added to the kept one."""

    local_map: LocalMap
    deleted_columns: tuple[int, ...] = ()
    deleted_rows: tuple[int, ...] = ()
    coefficients: tuple[tuple[str, int, int, Scalar], ...] = ()
    residual: object = None

    def __bool__(self):
        return True


@dataclass(frozen=True)
class Obstructed:
    reason: str

    def __bool__(self):
        return False


@dataclass(frozen=True)
class Undecided:
    samples: int

    def __bool__(self):
        return False


_GRID = [Scalar(0), Scalar(1), Scalar(-1), Scalar(2), Scalar(-2), Scalar(Fraction(1, 2)),
         Scalar(Fraction(-1, 2)), Scalar(Fraction(3, 2)), Scalar(Fraction(-3, 2))]


def _core_pencil(d: ClassDescriptor) -> Pencil:
    """Trailing block of the representative that carries all nonzero rows and columns."""
    P = state_to_pencil(d.representative())
    rB, rC = d.core_shape
    rows, cols = range(d.m - rB, d.m), range(d.n - rC, d.n)
    return Pencil(P.R.submatrix(rows, cols), P.S.submatrix(rows, cols))


def _modification(nr: int, nc: int, del_rows, del_cols, coeffs):
    """Row and column operators of the deletion-with-combination map on a core."""
    keep_r = [i for i in range(nr) if i not in del_rows]
    keep_c = [j for j in range(nc) if j not in del_cols]
    Bm = [[ZERO] * nr for _ in keep_r]
    for a, i in enumerate(keep_r):
        Bm[a][i] = ONE
    Cm = [[ZERO] * nc for _ in keep_c]
    for a, j in enumerate(keep_c):
        Cm[a][j] = ONE
    for kind, kept, deleted, c in coeffs:
        if kind == "col":
            Cm[keep_c.index(kept)][deleted] = c
        else:
            Bm[keep_r.index(kept)][deleted] = c
    return Matrix._wrap(Bm, nr), Matrix._wrap(Cm, nc)


def _embed_rect(M: Matrix, rows: int, cols: int, r0: int, c0: int) -> Matrix:
    out = [[ZERO] * cols for _ in range(rows)]
    for i in range(M.rows):
        for j in range(M.cols):
            out[r0 + i][c0 + j] = M[i, j]
    return Matrix._wrap(out, cols)


def _lift(src: ClassDescriptor, dst: ClassDescriptor, Bm: Matrix, Cm: Matrix) -> tuple[Matrix, Matrix]:
    """Core-level operators as full ``dst x src`` operators (cores sit in the trailing blocks)."""
    sb, sc = src.core_shape
    db, dc = dst.core_shape
    B = _embed_rect(Bm, dst.m, src.m, dst.m - db, src.m - sb)
    C = _embed_rect(Cm, dst.n, src.n, dst.n - dc, src.n - sc)
    return B, C


def check_modification(src: ClassDescriptor, dst: ClassDescriptor, deleted_columns=(),
                       deleted_rows=(), coefficients=()) -> Convertible | None:
    """Apply a deletion-with-combination map to the source core; return a verified
    witness if the result lies in ``dst``.

    Results whose spectrum leaves the Gaussian rationals cannot be matched
    exactly and count as misses.
    """
    core = _core_pencil(src)
    nr, nc = core.shape
    Bm, Cm = _modification(nr, nc, set(deleted_rows), set(deleted_columns), coefficients)
    if (Bm.rows, Cm.rows) != dst.core_shape:
        return None
    cand = core.transform(Bm, Cm)
    if cand.is_zero():
        return None
    return _finish(src, dst, cand, Bm, Cm, tuple(deleted_columns), tuple(deleted_rows),
                   tuple(coefficients))


def _finish(src, dst, cand, Bm, Cm, dcols, drows, coeffs):
    B, C = _lift(src, dst, Bm, Cm)
    image = LocalMap(Matrix.identity(2), B, C).apply(src.representative())
    try:
        verdict = slocc_equivalent(image, dst.representative())
    except IrrationalSpectrum:
        return None
    if not verdict:
        return None
    w = verdict.witness
    total = LocalMap(w.A, w.B @ B, w.C @ C)
    result = total.apply(src.representative())
    if result.proportional_to(dst.representative()) is None or classify(result) != dst:
        raise AssertionError("conversion witness failed to verify")
    return Convertible(total, dcols, drows, coeffs, w)


def _quick_match(cand: Pencil, dst: ClassDescriptor) -> bool:
    """Cheap necessary conditions before a full classification."""
    if normal_rank(cand) != dst.inv.normal_rank:
        return False
    stacked_c = Matrix._wrap(cand.R.tolist() + cand.S.tolist(), cand.n)
    if rank(stacked_c) != cand.n:
        return False
    stacked_r = Matrix._wrap([list(a) + list(b) for a, b in zip(cand.R.tolist(), cand.S.tolist())],
                             2 * cand.n)
    if rank(stacked_r) != cand.m:
        return False
    right, left = minimal_indices(cand, dst.inv.normal_rank)
    core = dst.core
    return right == core.right and left == core.left


def _rank_one_alice(src: ClassDescriptor, dst: ClassDescriptor) -> Convertible | Obstructed:
    """Targets with Alice rank one are ``k`` copies of one point: project Alice first."""
    core = _core_pencil(src)
    r = normal_rank(core)
    k = dst.core_shape[0]
    if r < k:
        return Obstructed("normal-rank")
    t = 0
    while rank(core.at(ONE, Scalar(t))) < r:
        t += 1
    M = core.at(ONE, Scalar(t))
    # B0 M C0^T is [[0, 0], [0, I_r]] (zero block first, then unit blocks)
    dec = reduce_to_canonical(Pencil(M, Matrix.zeros(M.rows, M.cols)))
    nr, nc = core.shape
    sel_r = Matrix._wrap([[ONE if j == nr - k + i else ZERO for j in range(nr)] for i in range(k)], nr)
    sel_c = Matrix._wrap([[ONE if j == nc - k + i else ZERO for j in range(nc)] for i in range(k)], nc)
    B, C = _lift(src, dst, sel_r @ dec.B, sel_c @ dec.C)
    A = Matrix._wrap([[ZERO, ONE], [ZERO, Scalar(t)]], 2)
    total = LocalMap(A, B, C)
    result = total.apply(src.representative())
    if result.proportional_to(dst.representative()) is None:
        raise AssertionError("rank-one Alice witness failed to verify")
    return Convertible(total)


def _random_coeff(rng: random.Random) -> Scalar:
    re_ = Fraction(rng.randint(-6, 6), rng.randint(1, 4))
    im_ = Fraction(rng.randint(-6, 6), rng.randint(1, 4)) if rng.random() < 0.3 else 0
    return Scalar(re_, im_)


def convertibility(src: ClassDescriptor, dst: ClassDescriptor, budget: int = 10_000,
                   seed: int = 0, tensor_rank_obstruction: bool = True):
    """Semi-decide whether ``src`` converts to ``dst`` by a non-invertible SLOCC map.

    Convertible witnesses are always verified; Undecided means the search
    budget ran out.  Among the structured coefficient grid, a hit whose
    residual needs no Moebius change on Alice's side is preferred.
    """
    if src == dst:
        raise ValueError("source and target classes coincide")
    if any(b > a for a, b in zip(src.local_ranks, dst.local_ranks)):
        return Obstructed("local-rank")
    if tensor_rank_obstruction and dst.tensor_rank > src.tensor_rank:
        return Obstructed("tensor-rank")
    if dst.local_ranks[0] == 1:
        return _rank_one_alice(src, dst)
    kr = src.core_shape[0] - dst.core_shape[0]
    kc = src.core_shape[1] - dst.core_shape[1]
    if kr == 0 and kc == 0:
        # equal local ranks on every party: a conversion would be invertible
        return Obstructed("local-rank")
    core = _core_pencil(src)
    nr, nc = core.shape
    choices = [(dr, dc) for dc in combinations(range(nc), kc) for dr in combinations(range(nr), kr)]

    def slots(dr, dc):
        out = [("col", j, i) for j in range(nc) if j not in dc for i in dc]
        out += [("row", j, i) for j in range(nr) if j not in dr for i in dr]
        return out

    used = 0
    direct_target = dst.inv

    def attempt(dr, dc, coeffs):
        Bm, Cm = _modification(nr, nc, set(dr), set(dc), coeffs)
        cand = core.transform(Bm, Cm)
        if not _quick_match(cand, dst):
            return None, False
        try:
            inv = kronecker_invariants(cand)
            got = normalize_invariants(inv)
        except KronSloccError:
            return None, False
        if got.finite != dst.inv.finite:
            return None, False
        direct = inv.finite == direct_target.finite
        return (Bm, Cm, cand, coeffs), direct

    share = max(1, budget // (2 * len(choices)))
    fallback = None
    for dr, dc in choices:
        sl = slots(dr, dc)
        for k, values in enumerate(product(_GRID, repeat=len(sl))):
            if k >= share or used >= budget:
                break
            used += 1
            coeffs = tuple((kind, kept, deleted, c) for (kind, kept, deleted), c in zip(sl, values)
                           if not c.is_zero())
            hit, direct = attempt(dr, dc, coeffs)
            if hit is None:
                continue
            if direct:
                res = _finish(src, dst, hit[2], hit[0], hit[1], dc, dr, coeffs)
                if res:
                    return res
            elif fallback is None:
                fallback = (hit, dc, dr, coeffs)
        if fallback is not None:
            hit, dc_, dr_, coeffs = fallback
            res = _finish(src, dst, hit[2], hit[0], hit[1], dc_, dr_, coeffs)
            if res:
                return res
            fallback = None
    rng = random.Random(seed)
    while used < budget:
        for dr, dc in choices:
            if used >= budget:
                break
            used += 1
            coeffs = tuple((kind, kept, deleted, _random_coeff(rng)) for kind, kept, deleted in slots(dr, dc))
            hit, _ = attempt(dr, dc, coeffs)
            if hit is not None:
                res = _finish(src, dst, hit[2], hit[0], hit[1], dc, dr, coeffs)
                if res:
                    return res
    return Undecided(used)


# ---------------------------------------------------------------------------
# hierarchy


@dataclass
class Hierarchy:
    m: int
    n: int
    nodes: list[ClassDescriptor]
    edges: list[tuple[int, int, Convertible]] = field(default_factory=list)
    undecided: list[tuple[int, int]] = field(default_factory=list)
    obstructed: list[tuple[int, int, str]] = field(default_factory=list)

    def to_dot(self) -> str:
        lines = ["digraph slocc {", "  rankdir=TB;", "  node [shape=box];"]
        for i, d in enumerate(self.nodes):
            ranks = ",".join(map(str, d.local_ranks))
            name = d.label + (" / " + " ".join(d.aliases) if d.aliases else "")
            lines.append(f'  n{i} [label="{name}\\n({ranks}) tr={d.tensor_rank}"];')
        for i, j, _ in self.edges:
            lines.append(f"  n{i} -> n{j};")
        for i, j in self.undecided:
            lines.append(f"  n{i} -> n{j} [style=dashed, color=gray];")
        lines.append("}")
        return "\n".join(lines) + "\n"


def hierarchy(m: int, n: int, budget: int = 1000, seed: int = 0, reduce: bool = False,
              tensor_rank_obstruction: bool = True) -> Hierarchy:
    """Pairwise convertibility between all classes of ``2 x m x n``."""
    cat = enumerate_classes(m, n)
    if isinstance(cat, InfiniteFamilies):
        raise UnboundedModuli(f"2x{m}x{n} has infinitely many classes ({cat.witness})")
    nodes = list(cat.classes)
    h = Hierarchy(m, n, nodes)
    for i, src in enumerate(nodes):
        for j, dst in enumerate(nodes):
            if i == j:
                continue
            v = convertibility(src, dst, budget, seed, tensor_rank_obstruction)
            if isinstance(v, Convertible):
                h.edges.append((i, j, v))
            elif isinstance(v, Undecided):
                h.undecided.append((i, j))
            else:
                h.obstructed.append((i, j, v.reason))
    if reduce:
        reach = {(i, j) for i, j, _ in h.edges}
        h.edges = [(i, j, v) for i, j, v in h.edges
                   if not any((i, k) in reach and (k, j) in reach for k in range(len(nodes)))]
    return h
