import pytest

from kronslocc import (
    LFT,
    DegenerateTriple,
    Equivalent,
    KroneckerInvariants,
    Matrix,
    NotSloccEquivalent,
    Scalar,
    SloccWitness,
    State,
    apply_slocc,
    ghz_state,
    kronecker_invariants,
    lft_from_three_pairs,
    local_ranks,
    minimal_indices,
    pencil_to_state,
    regularizing_lft,
    slocc_equivalent,
    state_to_pencil,
    transform_invariants,
    w_state,
    witness_maps,
)
from kronslocc.sampling import random_invertible

from conftest import pencil, state


def test_state_pencil_correspondence():
    assert state_to_pencil(ghz_state()) == pencil([[1, 0], [0, 0]], [[0, 0], [0, 1]])
    assert state_to_pencil(w_state()) == pencil([[0, 1], [1, 0]], [[1, 0], [0, 0]])
    P = pencil([[1, 2, 3]], [[0, 1, 0]])
    assert state_to_pencil(pencil_to_state(P)) == P


def test_amplitude_indexing():
    s = w_state()
    assert s.amplitude(0, 0, 1) == Scalar(1)
    assert s.amplitude(1, 0, 0) == Scalar(1)
    assert s.amplitude(1, 1, 1) == Scalar(0)
    assert State.from_amplitudes(s.amplitudes) == s


@pytest.mark.parametrize(
    "s, ranks",
    [
        (ghz_state(), (2, 2, 2)),
        (state([[1, 0], [0, 1]], [[0, 0], [0, 0]]), (1, 2, 2)),
        # |000> + |110>: AB entangled, C a product factor
        (state([[1, 0], [0, 0]], [[0, 0], [1, 0]]), (2, 2, 1)),
    ],
)
def test_local_ranks_examples(s, ranks):
    assert local_ranks(s) == ranks


def test_apply_slocc_identity_and_hadamard_like():
    g = ghz_state()
    assert apply_slocc(g, SloccWitness.identity(2, 2)) == g
    w = SloccWitness(Matrix([[1, 1], [1, -1]]), Matrix.identity(2), Matrix.identity(2))
    assert apply_slocc(g, w) == state([[1, 0], [0, 1]], [[1, 0], [0, -1]])


def test_witness_then_composes():
    rng = __import__("random").Random(3)
    s = w_state()
    w1 = SloccWitness(random_invertible(rng, 2), random_invertible(rng, 2), random_invertible(rng, 2))
    w2 = SloccWitness(random_invertible(rng, 2), random_invertible(rng, 2), random_invertible(rng, 2))
    assert apply_slocc(apply_slocc(s, w1), w2) == apply_slocc(s, w1.then(w2))
    assert apply_slocc(apply_slocc(s, w1), w1.inverse()) == s


def test_lft_action_on_points():
    t = LFT(2, 1, 3, 1)
    assert t(Scalar(0)) == Scalar(3)
    assert t(None) == Scalar(2)
    assert LFT(1, 0, 0, 1)(None) is None
    assert t.then(t.inverse()).normalized() == LFT.identity()


def test_transform_invariants_identity_and_ghz():
    inv = kronecker_invariants(state_to_pencil(ghz_state()))
    assert transform_invariants(inv, LFT.identity()) == inv
    moved = transform_invariants(inv, LFT(1, 1, 0, 1))
    assert moved.infinite == ()
    assert len(moved.finite) == 2


def test_transform_invariants_matches_recomputation(rng):
    s = pencil_to_state(pencil([[1, 0, 0], [0, 2, 1], [0, 0, 2]], [[0, 0, 0], [0, 1, 0], [0, 0, 1]]))
    inv = kronecker_invariants(state_to_pencil(s))
    for t in (LFT(1, 1, 0, 1), LFT(0, 1, 1, 0), LFT(2, 1, 3, 1), LFT(1, 0, 5, 1)):
        image = apply_slocc(s, SloccWitness.alice(t, 3, 3))
        assert kronecker_invariants(state_to_pencil(image)) == transform_invariants(inv, t)


def test_regularizing_lft_examples():
    plain = KroneckerInvariants.build(2, finite={0: [1], 1: [1]})
    assert regularizing_lft(plain).as_tuple() == (1, 1, 0, 1)
    ghz = kronecker_invariants(state_to_pencil(ghz_state()))
    t = regularizing_lft(ghz)
    assert t.as_tuple() == (1, 1, 0, 1)
    moved = transform_invariants(ghz, t)
    assert moved.infinite == () and len(moved.finite) == 2
    at_minus_one = KroneckerInvariants.build(1, finite={-1: [1]})
    assert regularizing_lft(at_minus_one).as_tuple() == (1, 1, 0, 2)


def test_lft_from_three_pairs_examples():
    assert lft_from_three_pairs([(0, 0), (1, 1), (2, 2)]).normalized().as_tuple() == (1, 0, 0, 1)
    t = lft_from_three_pairs([(1, 2), (2, 3), (3, 4)])
    assert t.normalized().as_tuple() == (1, 0, 1, 1)
    for x, y in ((1, 2), (2, 3), (3, 4)):
        assert t(Scalar(x)) == Scalar(y)
    with pytest.raises(DegenerateTriple):
        lft_from_three_pairs([(0, 0), (1, 1), (1, 2)])


def test_lft_from_three_pairs_maps_points():
    pairs = [(Scalar(0), Scalar(5)), (Scalar(1, 1), Scalar(-2)), (Scalar(3), Scalar(0, 1))]
    t = lft_from_three_pairs(pairs)
    for x, y in pairs:
        assert t(x) == y


def test_ghz_vs_w():
    v = slocc_equivalent(ghz_state(), w_state())
    assert isinstance(v, NotSloccEquivalent)
    assert v.reason == "elementary divisors"


def test_ghz_vs_random_image(rng):
    g = ghz_state()
    for _ in range(10):
        w = SloccWitness(random_invertible(rng, 2), random_invertible(rng, 2), random_invertible(rng, 2))
        image = apply_slocc(g, w)
        v = slocc_equivalent(g, image)
        assert isinstance(v, Equivalent)
        assert witness_maps(g, image, v.witness)


def test_ghz_vs_alice_only_image():
    target = state([[1, 0], [0, 1]], [[1, 0], [0, -1]])
    v = slocc_equivalent(ghz_state(), target)
    assert v and witness_maps(ghz_state(), target, v.witness)


def test_three_point_matching_needs_lft():
    # points 0, 1, 2 vs 0, 1, 3 are related by a Moebius map
    s1 = state([[0, 0, 0], [0, 1, 0], [0, 0, 2]], [[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    s2 = state([[0, 0, 0], [0, 1, 0], [0, 0, 3]], [[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    v = slocc_equivalent(s1, s2)
    assert v and witness_maps(s1, s2, v.witness)


def test_four_point_cross_ratio_separates():
    # cross ratios of {0, 1, 2, 3} and {0, 1, 2, 5} differ
    s1 = state([[0, 0, 0, 0], [0, 1, 0, 0], [0, 0, 2, 0], [0, 0, 0, 3]], [[1 if i == j else 0 for j in range(4)] for i in range(4)])
    s2 = state([[0, 0, 0, 0], [0, 1, 0, 0], [0, 0, 2, 0], [0, 0, 0, 5]], [[1 if i == j else 0 for j in range(4)] for i in range(4)])
    v = slocc_equivalent(s1, s2)
    assert not v and v.reason == "no LFT matches"
    s3 = state([[0, 0, 0, 0], [0, 3, 0, 0], [0, 0, 2, 0], [0, 0, 0, 1]], [[1 if i == j else 0 for j in range(4)] for i in range(4)])
    assert slocc_equivalent(s1, s3)


def test_alice_preserves_minimal_indices():
    s = pencil_to_state(pencil([[0, 1, 0], [0, 0, 0]], [[1, 0, 0], [0, 0, 1]]))
    before = minimal_indices(state_to_pencil(s))
    after = apply_slocc(s, SloccWitness.alice(LFT(1, 2, 3, 4), 2, 3))
    assert minimal_indices(state_to_pencil(after)) == before


def test_rank_mismatch_reason():
    a = state([[1, 0], [0, 0]], [[0, 0], [0, 0]])
    v = slocc_equivalent(a, ghz_state())
    assert not v and v.reason == "normal rank"
