"""Exact Kronecker invariants of matrix pencils and SLOCC classes of 2 x m x n states."""

from .catalogue import (
    Catalogue,
    ClassDescriptor,
    Convertible,
    Hierarchy,
    InfiniteFamilies,
    LocalMap,
    Obstructed,
    UnboundedModuli,
    Undecided,
    check_modification,
    classify,
    convertibility,
    enumerate_classes,
    hierarchy,
    normalize_invariants,
    tensor_rank,
    tensor_rank_of_invariants,
)
from .errors import DegenerateTriple, DimensionMismatch, IrrationalSpectrum, KronSloccError, ZeroPolynomial
from .hpoly import INFINITY, HomoPoly2, ProjectivePoint, hpoly_gcd, hpoly_linear_factorization
from .invariants import (
    KroneckerInvariants,
    Pencil,
    elementary_divisors,
    invariant_polynomials,
    invariant_polynomials_by_minors,
    kronecker_invariants,
    minimal_indices,
    normal_rank,
)
from .kronecker import (
    CanonicalDecomposition,
    NotEquivalent,
    StrictEquivalent,
    canonical_pencil,
    reduce_to_canonical,
    strict_equiv,
)
from .matrix import Matrix, nullspace_basis, rank, solve_linear
from .scalar import I, ONE, ZERO, Scalar, format_scalar, parse_scalar
from .slocc import (
    LFT,
    Equivalent,
    NotSloccEquivalent,
    SloccWitness,
    State,
    apply_slocc,
    ghz_state,
    lft_from_three_pairs,
    local_ranks,
    pencil_to_state,
    regularizing_lft,
    slocc_equivalent,
    state_to_pencil,
    transform_invariants,
    w_state,
    witness_maps,
)

__version__ = "0.1.0"
