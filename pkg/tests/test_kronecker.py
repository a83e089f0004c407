from kronslocc import (
    KroneckerInvariants,
    Matrix,
    NotEquivalent,
    StrictEquivalent,
    canonical_pencil,
    kronecker_invariants,
    reduce_to_canonical,
    strict_equiv,
)
from kronslocc.sampling import random_invariants, random_invertible

from conftest import pencil

GHZ = pencil([[1, 0], [0, 0]], [[0, 0], [0, 1]])
W = pencil([[0, 1], [1, 0]], [[1, 0], [0, 0]])


def test_canonical_pencil_single_blocks():
    assert canonical_pencil(KroneckerInvariants.build(1, right=[1]), 1, 2) == pencil([[0, 1]], [[1, 0]])
    assert canonical_pencil(KroneckerInvariants.build(1, left=[1]), 2, 1) == pencil([[0], [1]], [[1], [0]])


def test_canonical_pencil_ghz_is_diag_mu_lam():
    K = canonical_pencil(kronecker_invariants(GHZ), 2, 2)
    # N block first, then the M block at 0
    assert K == pencil([[1, 0], [0, 0]], [[0, 0], [0, 1]])


def test_canonical_is_fixed_point():
    inv = KroneckerInvariants.build(4, right=[0, 1], left=[1], finite={0: [1], 2: [1]}, infinite=[])
    m, n = inv.shape()
    K = canonical_pencil(inv, m, n)
    dec = reduce_to_canonical(K)
    assert dec.K == K
    assert dec.inv == inv
    assert K.transform(dec.B, dec.C) == K


def test_reduce_ghz():
    dec = reduce_to_canonical(GHZ)
    assert GHZ.transform(dec.B, dec.C) == dec.K
    for M in (dec.B, dec.C):
        assert all(M[i, j].is_zero() for i in range(2) for j in range(2) if i != j)


def test_round_trip_small_corpus(rng):
    for _ in range(60):
        inv = random_invariants(rng, 5, 6)
        m, n = inv.shape()
        K = canonical_pencil(inv, m, n)
        P = K.transform(random_invertible(rng, m), random_invertible(rng, n))
        dec = reduce_to_canonical(P)
        assert dec.inv == inv
        assert P.transform(dec.B, dec.C) == K


def test_strict_equiv_random_images(rng):
    for _ in range(30):
        inv = random_invariants(rng, 5, 6)
        m, n = inv.shape()
        P = canonical_pencil(inv, m, n).transform(random_invertible(rng, m), random_invertible(rng, n))
        Q = P.transform(random_invertible(rng, m), random_invertible(rng, n))
        v = strict_equiv(P, Q)
        assert isinstance(v, StrictEquivalent)
        assert P.transform(v.B, v.C) == Q


def test_strict_equiv_ghz_vs_w():
    v = strict_equiv(GHZ, W)
    assert isinstance(v, NotEquivalent)
    assert v.reason == "elementary divisors"


def test_strict_equiv_column_swap():
    P, Q = pencil([[0, 1]], [[1, 0]]), pencil([[1, 0]], [[0, 1]])
    v = strict_equiv(P, Q)
    assert isinstance(v, StrictEquivalent)
    assert P.transform(v.B, v.C) == Q


def test_strict_equiv_zero_kernels_differ():
    P = pencil([[1, 0], [0, 0]], [[0, 0], [0, 0]])
    Q = pencil([[1, 0], [0, 0]], [[0, 0], [0, 1]])
    assert not strict_equiv(P, Q)


def test_strict_equiv_zero_pencils():
    Z = pencil([[0, 0]], [[0, 0]])
    v = strict_equiv(Z, Z)
    assert v and v.B == Matrix.identity(1)
