import random
from fractions import Fraction

from hypothesis import assume, given, settings
from hypothesis import strategies as st

from kronslocc import (
    LFT,
    DegenerateTriple,
    HomoPoly2,
    Matrix,
    Scalar,
    SloccWitness,
    apply_slocc,
    canonical_pencil,
    hpoly_gcd,
    kronecker_invariants,
    lft_from_three_pairs,
    minimal_indices,
    nullspace_basis,
    pencil_to_state,
    rank,
    reduce_to_canonical,
    state_to_pencil,
    transform_invariants,
)
from kronslocc.sampling import random_invariants, random_invertible

small = st.integers(-4, 4)
fractions = st.builds(Fraction, small, st.integers(1, 3))
scalars = st.builds(Scalar, fractions, st.one_of(st.just(Fraction(0)), fractions))
nonzero = scalars.filter(lambda s: not s.is_zero())
seeds = st.integers(0, 2**32 - 1)


def matrices(rows, cols):
    return st.lists(st.lists(scalars, min_size=cols, max_size=cols), min_size=rows, max_size=rows).map(Matrix)


@given(scalars, scalars, scalars)
def test_scalar_ring_laws(a, b, c):
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)
    assert a + b == b + a


@given(nonzero)
def test_scalar_inverse(a):
    assert a * a.inverse() == Scalar(1)


@given(st.integers(1, 4), st.integers(1, 4), st.data())
def test_rank_nullity(r, c, data):
    M = data.draw(matrices(r, c))
    basis = nullspace_basis(M)
    assert rank(M) + len(basis) == c
    for v in basis:
        assert all(x.is_zero() for x in M.apply(v))


@given(matrices(3, 3), matrices(3, 3), matrices(3, 2))
def test_matmul_associative_and_det_multiplicative(A, B, C):
    assert (A @ B) @ C == A @ (B @ C)
    assert (A @ B).det() == A.det() * B.det()
    assert (A @ B).T == B.T @ A.T


@given(st.lists(scalars, min_size=1, max_size=4), st.lists(scalars, min_size=1, max_size=4),
       st.lists(scalars, min_size=1, max_size=3))
def test_hpoly_gcd_divides(p, q, common):
    P, Q, G = HomoPoly2(p), HomoPoly2(q), HomoPoly2(common)
    assume(not G.is_zero() and not P.is_zero() and not Q.is_zero())
    g = hpoly_gcd(P * G, Q * G)
    assert g.divides(P * G) and g.divides(Q * G)
    assert G.divides(g)


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_reduction_round_trip(seed):
    rng = random.Random(seed)
    inv = random_invariants(rng, 4, 5)
    m, n = inv.shape()
    K = canonical_pencil(inv, m, n)
    P = K.transform(random_invertible(rng, m), random_invertible(rng, n))
    dec = reduce_to_canonical(P)
    assert dec.inv == inv and P.transform(dec.B, dec.C) == K


@settings(max_examples=40, deadline=None)
@given(seeds, nonzero, scalars, scalars, nonzero)
def test_alice_moves_points_and_keeps_indices(seed, a, b, c, d):
    assume(not (a * d - b * c).is_zero())
    rng = random.Random(seed)
    inv = random_invariants(rng, 4, 4)
    m, n = inv.shape()
    s = pencil_to_state(canonical_pencil(inv, m, n))
    t = LFT(a, b, c, d)
    image = apply_slocc(s, SloccWitness.alice(t, m, n))
    P = state_to_pencil(image)
    assert minimal_indices(P) == (inv.right, inv.left)
    assert kronecker_invariants(P) == transform_invariants(inv, t)


@given(st.lists(scalars, min_size=3, max_size=3, unique=True), st.lists(scalars, min_size=3, max_size=3, unique=True))
def test_three_pairs_determine_lft(xs, ys):
    t = lft_from_three_pairs(list(zip(xs, ys)))
    for x, y in zip(xs, ys):
        assert t(x) == y


@given(nonzero, scalars, scalars, nonzero, scalars)
def test_lft_then_is_composition(a, b, c, d, x):
    assume(not (a * d - b * c).is_zero())
    t = LFT(a, b, c, d)
    u = LFT(1, 2, 0, 1)
    mid = t(x)
    expected = u(mid)
    assert t.then(u)(x) == expected


def test_repeated_source_point_is_degenerate():
    try:
        lft_from_three_pairs([(0, 1), (0, 2), (1, 3)])
    except DegenerateTriple:
        return
    raise AssertionError("expected DegenerateTriple")
