import pytest

from kronslocc import (
    HomoPoly2,
    KroneckerInvariants,
    Matrix,
    Pencil,
    Scalar,
    canonical_pencil,
    elementary_divisors,
    invariant_polynomials,
    invariant_polynomials_by_minors,
    kronecker_invariants,
    minimal_indices,
    normal_rank,
)
from kronslocc.sampling import random_invariants, random_invertible

from conftest import pencil

MU, LAM = HomoPoly2.mu(), HomoPoly2.lam()
GHZ = pencil([[1, 0], [0, 0]], [[0, 0], [0, 1]])
W = pencil([[0, 1], [1, 0]], [[1, 0], [0, 0]])
L1 = pencil([[0, 1]], [[1, 0]])


def test_normal_rank_examples():
    assert normal_rank(GHZ) == 2
    assert normal_rank(Pencil(Matrix.zeros(2, 3), Matrix.zeros(2, 3))) == 0
    assert normal_rank(L1) == 1


def test_invariant_polynomials_examples():
    assert invariant_polynomials(GHZ) == [HomoPoly2.one(), MU * LAM]
    assert invariant_polynomials(W) == [HomoPoly2.one(), MU * MU]
    assert invariant_polynomials(pencil([[1]], [[1]])) == [MU + LAM]


def test_elementary_divisor_examples():
    assert elementary_divisors(GHZ) == ({Scalar(0): (1,)}, (1,))
    assert elementary_divisors(W) == ({}, (2,))
    m_block = pencil([[3, 1], [0, 3]], [[1, 0], [0, 1]])
    assert elementary_divisors(m_block) == ({Scalar(3): (2,)}, ())


def test_minimal_index_examples():
    assert minimal_indices(L1) == ((1,), ())
    assert minimal_indices(GHZ) == ((), ())
    assert minimal_indices(pencil([[0]], [[0]])) == ((0,), (0,))


def test_kronecker_invariants_ghz():
    inv = kronecker_invariants(GHZ)
    assert inv == KroneckerInvariants.build(2, finite={0: [1]}, infinite=[1])


def test_kronecker_invariants_l1_plus_l1t():
    # blockdiag([lam mu], [lam; mu])
    P = pencil([[0, 1, 0], [0, 0, 0], [0, 0, 1]], [[1, 0, 0], [0, 0, 1], [0, 0, 0]])
    inv = kronecker_invariants(P)
    assert (inv.normal_rank, inv.right, inv.left, inv.finite, inv.infinite) == (2, (1,), (1,), (), ())


def test_zero_index_numbers_recovered():
    inv = KroneckerInvariants.build(3, right=[0, 1], left=[0], finite={2: [1]}, infinite=[1])
    m, n = inv.shape()
    got = kronecker_invariants(canonical_pencil(inv, m, n))
    assert got == inv
    assert (got.zero_index, got.transpose_zero_index) == (1, 1)


def test_bookkeeping_check_rejects():
    inv = KroneckerInvariants.build(1, right=[1])
    with pytest.raises(ValueError):
        inv.check(2, 2)


def test_smith_route_agrees_with_minors(rng):
    for _ in range(40):
        inv = random_invariants(rng, 4, 4)
        m, n = inv.shape()
        P = canonical_pencil(inv, m, n).transform(random_invertible(rng, m), random_invertible(rng, n))
        assert invariant_polynomials(P) == invariant_polynomials_by_minors(P)
        assert invariant_polynomials(P) == inv.invariant_polynomials()
