"""Constructive Kronecker canonical form.

``reduce_to_canonical`` peels blocks off the pencil one at a time and keeps
every transformation exact, so the returned ``B, C`` satisfy
``B R C^T = K.R`` and ``B S C^T = K.S`` on the nose.  The order of work is

1. zero columns / zero rows (common kernels of ``R`` and ``S``);
2. ``L_eps`` blocks from minimal-degree polynomial kernel vectors, each split
   off and decoupled by solving a linear system for the off-diagonal part;
3. ``L_nu^T`` blocks, the same on the transpose;
4. the regular remainder, brought to ``N``/``M`` Jordan-chain blocks.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import upoly
from .errors import DimensionMismatch, IrrationalSpectrum
from .hpoly import HomoPoly2, gaussian_rational_roots
from .invariants import KroneckerInvariants, Pencil, kronecker_invariants
from .matrix import Matrix, complete_basis, nullspace_basis, primitive, rank, solve_linear
from .scalar import ONE, ZERO, Scalar

__all__ = [
    "CanonicalDecomposition",
    "StrictEquivalent",
    "NotEquivalent",
    "canonical_pencil",
    "reduce_to_canonical",
    "strict_equiv",
    "block_sum",
]


@dataclass(frozen=True)
class CanonicalDecomposition:
    B: Matrix
    C: Matrix
    K: Pencil
    inv: KroneckerInvariants


@dataclass(frozen=True)
class StrictEquivalent:
    """``B P C^T = Q`` holds exactly."""

    B: Matrix
    C: Matrix

    def __bool__(self):
        return True


@dataclass(frozen=True)
class NotEquivalent:
    reason: str

    def __bool__(self):
        return False


# ---------------------------------------------------------------------------
# canonical blocks


def _l_block(eps: int) -> tuple[list[list[Scalar]], list[list[Scalar]]]:
    R = [[ZERO] * (eps + 1) for _ in range(eps)]
    S = [[ZERO] * (eps + 1) for _ in range(eps)]
    for i in range(eps):
        S[i][i] = ONE
        R[i][i + 1] = ONE
    return R, S


def _n_block(e: int):
    R = [[ONE if i == j else ZERO for j in range(e)] for i in range(e)]
    S = [[ONE if j == i + 1 else ZERO for j in range(e)] for i in range(e)]
    return R, S


def _m_block(e: int, x: Scalar):
    R = [[x if i == j else (ONE if j == i + 1 else ZERO) for j in range(e)] for i in range(e)]
    S = [[ONE if i == j else ZERO for j in range(e)] for i in range(e)]
    return R, S


def _transpose(block):
    R, S = block
    return [list(r) for r in zip(*R)], [list(r) for r in zip(*S)]


def block_sum(blocks: list[tuple[int, int, list, list]]) -> Pencil:
    """Block-diagonal pencil from ``(rows, cols, R, S)`` pieces."""
    m = sum(b[0] for b in blocks)
    n = sum(b[1] for b in blocks)
    R = [[ZERO] * n for _ in range(m)]
    S = [[ZERO] * n for _ in range(m)]
    r0 = c0 = 0
    for rows, cols, br, bs in blocks:
        for i in range(rows):
            for j in range(cols):
                R[r0 + i][c0 + j] = br[i][j]
                S[r0 + i][c0 + j] = bs[i][j]
        r0 += rows
        c0 += cols
    return Pencil(Matrix._wrap(R, n), Matrix._wrap(S, n))


def _regular_blocks(inv: KroneckerInvariants):
    blocks = []
    for e in sorted(inv.infinite):
        blocks.append((e, e, *_n_block(e)))
    for x, degs in inv.finite:
        for e in sorted(degs):
            blocks.append((e, e, *_m_block(e, x)))
    return blocks


def canonical_pencil(inv: KroneckerInvariants, m: int, n: int) -> Pencil:
    """Assemble the block-diagonal canonical pencil in the fixed block order.

    Order: zero block ``h x g``, ``L_eps`` ascending, ``L_nu^T`` ascending,
    ``N`` blocks ascending, ``M`` blocks by (eigenvalue, degree).
    """
    inv.check(m, n)
    h, g = inv.transpose_zero_index, inv.zero_index
    blocks = [(h, g, [[ZERO] * g for _ in range(h)], [[ZERO] * g for _ in range(h)])]
    for e in inv.right:
        if e > 0:
            blocks.append((e, e + 1, *_l_block(e)))
    for v in inv.left:
        if v > 0:
            blocks.append((v + 1, v, *_transpose(_l_block(v))))
    blocks.extend(_regular_blocks(inv))
    return block_sum(blocks)


# ---------------------------------------------------------------------------
# helpers


def _embed(local: Matrix, offset: int, size: int) -> Matrix:
    """``diag(I_offset, local)`` of total size ``size``."""
    rows = []
    for i in range(size):
        if i < offset:
            rows.append([ONE if j == i else ZERO for j in range(size)])
        else:
            rows.append([ZERO] * offset + list(local.row(i - offset)))
    return Matrix._wrap(rows, size)


def _stack_columns(vectors: list[list[Scalar]], dim: int) -> Matrix:
    return Matrix.from_columns(vectors, dim)


def _trailing(P: Pencil, r0: int, c0: int) -> Pencil:
    m, n = P.shape
    rows, cols = range(r0, m), range(c0, n)
    return Pencil(P.R.submatrix(rows, cols), P.S.submatrix(rows, cols))


def _common_kernel(R: Matrix, S: Matrix) -> list[list[Scalar]]:
    stacked = Matrix._wrap(list(R.tolist()) + list(S.tolist()), R.cols)
    return nullspace_basis(stacked)


def _shifted(x: list[list[Scalar]], d: int, k: int, n: int) -> list[Scalar]:
    """Coefficients of ``mu^(d-eps-k) lam^k x`` as a degree-``d`` band vector."""
    out = [ZERO] * ((d + 1) * n)
    for j, c in enumerate(x):
        out[(j + k) * n:(j + k + 1) * n] = c
    return out


def _minimal_basis(P: Pencil) -> list[list[list[Scalar]]]:
    """Minimal polynomial basis of the right kernel, ordered by degree.

    Built degree by degree from the band matrices: at degree ``d`` the
    kernel vectors not generated by shifts of lower-degree members are new
    basis members.  Each member is a list of coefficient vectors.
    """
    from .invariants import _band_matrix, normal_rank

    m, n = P.shape
    want = n - normal_rank(P)
    found: list[list[list[Scalar]]] = []
    d = 0
    while len(found) < want:
        if d > n:
            raise AssertionError("minimal basis search did not terminate")
        old = [_shifted(x, d, k, n) for x in found for k in range(d - len(x) + 2)]
        dim = (d + 1) * n
        base = rank(Matrix._wrap(old, dim)) if old else 0
        span = old
        for z in nullspace_basis(_band_matrix(P.R, P.S, d)):
            trial = span + [z]
            if rank(Matrix._wrap(trial, dim)) > base:
                span = trial
                base += 1
                z = primitive([z])[0]
                found.append([z[j * n:(j + 1) * n] for j in range(d + 1)])
        d += 1
    return found


def _split_l_blocks(P: Pencil) -> tuple[list[int], Matrix, Matrix]:
    """Local (B, C) with ``B P C^T = diag(L_eps..., rest)`` where ``rest`` has no right kernel.

    All ``L`` chains come from one minimal basis of ``P``; the coupling to
    the remainder is then removed by one linear solve.
    """
    m, n = P.shape
    basis = _minimal_basis(P)
    epss = [len(x) - 1 for x in basis]
    ws, vs = [], []
    for x in basis:
        chain = [[c if j % 2 == 0 else -c for c in xj] for j, xj in enumerate(x)]
        ws.extend(chain)
        vs.extend(P.S.apply(w) for w in chain[:-1])
    W = _stack_columns(ws + complete_basis(ws, n), n)
    V = _stack_columns(vs + complete_basis(vs, m), m)
    B = V.inverse()
    Q = Pencil(B @ P.R @ W, B @ P.S @ W)
    # decouple: L Y + X Q22 = -D for both coefficient matrices
    ra, ca = len(vs), len(ws)
    rb, cb = m - ra, n - ca
    if cb > 0 and ra > 0 and rb > 0:
        nY, nX = ca * cb, ra * rb
        eqs, rhs = [], []
        for coeff in (Q.R, Q.S):
            for i in range(ra):
                for j in range(cb):
                    row = [ZERO] * (nY + nX)
                    for k in range(ca):  # (L Y)[i,j] = sum_k L[i,k] Y[k,j]
                        if not coeff[i, k].is_zero():
                            row[k * cb + j] = coeff[i, k]
                    for k in range(rb):  # (X Q22)[i,j] = sum_k X[i,k] Q22[k,j]
                        if not coeff[ra + k, ca + j].is_zero():
                            row[nY + i * rb + k] = coeff[ra + k, ca + j]
                    eqs.append(row)
                    rhs.append(-coeff[i, ca + j])
        sol = solve_linear(Matrix._wrap(eqs, nY + nX), rhs)
        if sol is None:
            raise AssertionError("L-block decoupling system is inconsistent")
        left = Matrix.identity(m).tolist()
        for i in range(ra):
            for k in range(rb):
                left[i][ra + k] = sol[nY + i * rb + k]
        right = Matrix.identity(n).tolist()
        for k in range(ca):
            for j in range(cb):
                right[k][ca + j] = sol[k * cb + j]
        B = Matrix._wrap(left, m) @ B
        W = W @ Matrix._wrap(right, n)
    return epss, B, W.T


def _det_polynomial(R: Matrix, S: Matrix) -> list[Scalar]:
    """``det(R + lam S)`` as a coefficient list, by interpolation at ``0..l``."""
    l = R.rows
    xs = [Scalar(t) for t in range(l + 1)]
    ys = [(R + S.scale(x)).det() for x in xs]
    poly: list[Scalar] = []
    for i, xi in enumerate(xs):
        if ys[i].is_zero():
            continue
        basis = [ONE]
        denom = ONE
        for j, xj in enumerate(xs):
            if j != i:
                basis = upoly.mul(basis, [-xj, ONE])
                denom = denom * (xi - xj)
        poly = upoly.add(poly, upoly.scale(basis, ys[i] / denom))
    return poly


def _nilpotent_chains(M: Matrix) -> list[list[list[Scalar]]]:
    """Jordan chains ``[w_0, ..., w_{e-1}]`` with ``M w_0 = 0``, ``M w_i = w_{i-1}``.

    Chains come out longest first.
    """
    k = M.rows
    powers = [Matrix.identity(k)]
    kernels = [[]]
    while len(kernels[-1]) < k:
        powers.append(powers[-1] @ M)
        kernels.append(nullspace_basis(powers[-1]))
        if len(powers) > k + 1:
            raise AssertionError("matrix is not nilpotent")
    s = len(kernels) - 1
    tops: list[tuple[list[Scalar], int]] = []
    for j in range(s, 0, -1):
        span = [list(v) for v in kernels[j - 1]]
        for top, length in tops:
            span.append(powers[length - j].apply(top))
        base_rank = rank(Matrix._wrap(span, k)) if span else 0
        for b in kernels[j]:
            trial = span + [list(b)]
            if rank(Matrix._wrap(trial, k)) > base_rank:
                span = trial
                base_rank += 1
                tops.append((list(b), j))
    chains = []
    for top, length in tops:
        chain = [powers[length - 1 - i].apply(top) for i in range(length)]
        chains.append(chain)
    return chains


def _eigen_chains(F: Matrix, G: Matrix) -> list[list[list[Scalar]]]:
    """Chains ``F w_0 = 0``, ``F w_i = G w_{i-1}`` spanning the eigenspace of ``(F, G)``.

    The space is the limit of the Wong sequence ``W_{k+1} = F^{-1}(G W_k)``;
    on it ``Phi = G^{-1} F`` is nilpotent and the chains are its Jordan
    chains.
    """
    l = F.cols
    basis: list[list[Scalar]] = []
    while True:
        GW = [G.apply(w) for w in basis]
        stacked = Matrix._wrap(
            [list(F.row(i)) + [-v[i] for v in GW] for i in range(F.rows)], l + len(GW)
        )
        grown = [z[:l] for z in nullspace_basis(stacked)]
        grown = [primitive([v])[0] for v in _independent(grown, l)]
        if len(grown) == len(basis):
            break
        basis = grown
    if not basis:
        return []
    Eb = Matrix.from_columns(basis, l)
    GE = G @ Eb
    cols = []
    for e in basis:
        c = solve_linear(GE, F.apply(e))
        if c is None:
            raise AssertionError("eigenspace is not invariant")
        cols.append(c)
    Phi = Matrix.from_columns(cols, len(basis))
    return [primitive([Eb.apply(w) for w in chain]) for chain in _nilpotent_chains(Phi)]


def _independent(vectors: list[list[Scalar]], dim: int) -> list[list[Scalar]]:
    """Maximal independent subfamily, in order."""
    kept: list[list[Scalar]] = []
    for v in vectors:
        trial = kept + [v]
        if rank(Matrix._wrap(trial, dim)) == len(trial):
            kept = trial
    return kept


def _regular_chains(R0: Matrix, S0: Matrix):
    """Jordan chains of a square regular pencil, in canonical block order.

    Returns ``(infinite, finite)``: chains for the ``N`` blocks and
    ``(x, chain)`` pairs for the ``M`` blocks.
    """
    l = R0.rows
    detp = _det_polynomial(R0, S0)
    if not detp:
        raise AssertionError("pencil is not regular")
    lam_roots, residual = gaussian_rational_roots(detp) if len(detp) > 1 else ([], [ONE])
    if len(residual) > 1:
        raise IrrationalSpectrum(HomoPoly2.from_dehomogenized(residual, upoly.degree(residual)))
    infinite = _eigen_chains(S0, R0) if len(detp) - 1 < l else []
    finite = []
    for lam_root, _ in lam_roots:
        x = -lam_root
        for chain in _eigen_chains(R0 - S0.scale(x), S0):
            finite.append((x, chain))
    infinite.sort(key=len)
    finite.sort(key=lambda xc: (xc[0].sort_key(), len(xc[1])))
    return infinite, finite


# ---------------------------------------------------------------------------
# main reduction


def reduce_to_canonical(P: Pencil) -> CanonicalDecomposition:
    """Exact ``(B, C, K, inv)`` with ``B P C^T = K`` in canonical block order."""
    m, n = P.shape
    B = Matrix.identity(m)
    C = Matrix.identity(n)
    cur = P

    # zero block
    zc = _common_kernel(P.R, P.S)
    zr = _common_kernel(P.R.T, P.S.T)
    g, h = len(zc), len(zr)
    if g or h:
        W = _stack_columns(zc + complete_basis(zc, n), n)
        Bl = Matrix._wrap(zr + complete_basis(zr, m), m)
        B = Bl @ B
        C = W.T @ C
        cur = P.transform(B, C)
    r0, c0 = h, g

    right: list[int] = [0] * g
    left: list[int] = [0] * h
    sub = _trailing(cur, r0, c0)
    # L blocks
    if sub.n and _has_right_kernel(sub):
        epss, Bl, Cl = _split_l_blocks(sub)
        B = _embed(Bl, r0, m) @ B
        C = _embed(Cl, c0, n) @ C
        sub = _trailing(sub.transform(Bl, Cl), sum(epss), sum(epss) + len(epss))
        right.extend(epss)
        r0 += sum(epss)
        c0 += sum(epss) + len(epss)
    # L^T blocks
    if sub.m and _has_right_kernel(sub.T):
        nus, Bt, Ct = _split_l_blocks(sub.T)
        B = _embed(Ct, r0, m) @ B
        C = _embed(Bt, c0, n) @ C
        sub = _trailing(sub.transform(Ct, Bt), sum(nus) + len(nus), sum(nus))
        left.extend(nus)
        r0 += sum(nus) + len(nus)
        c0 += sum(nus)
    # regular part
    if sub.m != sub.n:
        raise AssertionError("remaining part is not square")
    inf_degrees: list[int] = []
    fin: dict[Scalar, list[int]] = {}
    if sub.m:
        infinite, finite = _regular_chains(sub.R, sub.S)
        ws, us = [], []
        for chain in infinite:
            ws.extend(chain)
            us.extend(sub.R.apply(w) for w in chain)
            inf_degrees.append(len(chain))
        for x, chain in finite:
            ws.extend(chain)
            us.extend(sub.S.apply(w) for w in chain)
            fin.setdefault(x, []).append(len(chain))
        l = sub.m
        if len(ws) != l:
            raise AssertionError("Jordan chains do not span the regular part")
        U = _stack_columns(us, l)
        W = _stack_columns(ws, l)
        B = _embed(U.inverse(), r0, m) @ B
        C = _embed(W.T, c0, n) @ C
    r = sum(right) + sum(left) + sum(inf_degrees) + sum(sum(d) for d in fin.values())
    inv = KroneckerInvariants.build(r, right, left, fin, inf_degrees)
    K = canonical_pencil(inv, m, n)
    if P.transform(B, C) != K:
        raise AssertionError("canonical reduction failed to verify")
    return CanonicalDecomposition(B, C, K, inv)


def _has_right_kernel(P: Pencil) -> bool:
    """True if ``mu R + lam S`` has a nonzero polynomial kernel."""
    from .invariants import normal_rank

    return P.n > normal_rank(P)


# ---------------------------------------------------------------------------
# strict equivalence

_FIELDS = (
    ("normal_rank", "normal rank"),
    ("right", "right minimal indices"),
    ("left", "left minimal indices"),
    ("finite", "elementary divisors"),
    ("infinite", "elementary divisors"),
)


def first_difference(a: KroneckerInvariants, b: KroneckerInvariants) -> str | None:
    for attr, name in _FIELDS:
        if getattr(a, attr) != getattr(b, attr):
            return name
    return None


def _compression(P: Pencil) -> tuple[list[int], Matrix, Matrix]:
    """Column basis ``W`` with ``P W = [0 | P[:, pivots]]`` and its inverse.

    The kernel part of ``W`` comes straight from the echelon form of
    ``[R; S]``, so ``W^-1`` is explicit and no large inversion is needed.
    """
    from .matrix import _rref

    m, n = P.shape
    red, pivots = _rref(P.R.tolist() + P.S.tolist(), n)
    pivset = set(pivots)
    free = [j for j in range(n) if j not in pivset]
    cols = []
    for f in free:
        z = [ZERO] * n
        z[f] = ONE
        for i, p in enumerate(pivots):
            z[p] = -red[i][f]
        cols.append(z)
    for p in pivots:
        cols.append([ONE if i == p else ZERO for i in range(n)])
    W = Matrix.from_columns(cols, n)
    inv_rows = [[ONE if j == f else ZERO for j in range(n)] for f in free]
    for i, p in enumerate(pivots):
        row = [ZERO] * n
        row[p] = ONE
        for f in free:
            row[f] = red[i][f]
        inv_rows.append(row)
    return pivots, W, Matrix._wrap(inv_rows, n)


def _block_diag_identity(k: int, M: Matrix) -> Matrix:
    return _embed(M, k, k + M.rows)


def strict_equiv(P: Pencil, Q: Pencil) -> StrictEquivalent | NotEquivalent:
    """Decide ``B P C^T = Q`` and return a verified witness when it holds.

    Common kernels of ``R`` and ``S`` on either side are split off first, so
    the reductions only ever see the compressed cores.
    """
    if P.shape != Q.shape:
        raise DimensionMismatch(f"pencils of shape {P.shape} and {Q.shape}")
    cp, Wp, Wp_inv = _compression(P)
    cq, Wq, Wq_inv = _compression(Q)
    rp, Vp, Vp_inv = _compression(P.T)
    rq, Vq, Vq_inv = _compression(Q.T)
    if len(cp) != len(cq):
        return NotEquivalent("right minimal indices")
    if len(rp) != len(rq):
        return NotEquivalent("left minimal indices")
    core_p = Pencil(P.R.submatrix(rp, cp), P.S.submatrix(rp, cp))
    core_q = Pencil(Q.R.submatrix(rq, cq), Q.S.submatrix(rq, cq))
    if core_p.m and core_p.n:
        dp = reduce_to_canonical(core_p)
        dq = reduce_to_canonical(core_q)
        diff = first_difference(dp.inv, dq.inv)
        if diff is not None:
            return NotEquivalent(diff)
        Bc = dq.B.inverse() @ dp.B
        Cc = dq.C.inverse() @ dp.C
    else:
        Bc, Cc = Matrix.identity(core_p.m), Matrix.identity(core_p.n)
    m, n = P.shape
    h, g = m - len(rp), n - len(cp)
    B = Vq_inv.T @ _block_diag_identity(h, Bc) @ Vp.T
    C = Wq_inv.T @ _block_diag_identity(g, Cc) @ Wp.T
    if P.transform(B, C) != Q:
        raise AssertionError("composed strict-equivalence witness failed to verify")
    return StrictEquivalent(B, C)
