from fractions import Fraction

import pytest

from kronslocc import (
    HomoPoly2,
    I,
    Matrix,
    Scalar,
    ZeroPolynomial,
    format_scalar,
    hpoly_gcd,
    hpoly_linear_factorization,
    nullspace_basis,
    parse_scalar,
    rank,
    solve_linear,
)

MU, LAM = HomoPoly2.mu(), HomoPoly2.lam()


@pytest.mark.parametrize(
    "text, value",
    [
        ("3", Scalar(3)),
        ("-3/2", Scalar(Fraction(-3, 2))),
        ("-3/2+1/1 i", Scalar(Fraction(-3, 2), 1)),
        ("1/2-2 i", Scalar(Fraction(1, 2), -2)),
        ("i", Scalar(0, 1)),
        ("-i", Scalar(0, -1)),
    ],
)
def test_parse_scalar(text, value):
    assert parse_scalar(text) == value


@pytest.mark.parametrize("bad", ["", "1/0", "abc", "1//2", "2 j"])
def test_parse_scalar_rejects(bad):
    with pytest.raises(ValueError):
        parse_scalar(bad)


def test_format_parse_round_trip():
    for s in (Scalar(0), Scalar(Fraction(7, 3)), Scalar(Fraction(-1, 2), Fraction(5, 4)), I):
        assert parse_scalar(format_scalar(s)) == s


def test_gaussian_field_arithmetic():
    a = Scalar(Fraction(1, 2), 3)
    b = Scalar(-2, Fraction(1, 3))
    assert (a * b) / b == a
    assert a * a.inverse() == Scalar(1)
    assert I * I == Scalar(-1)
    assert (a + b) - b == a
    with pytest.raises(ZeroDivisionError):
        Scalar(0).inverse()


@pytest.mark.parametrize(
    "M, r",
    [([[1, 0], [0, 1]], 2), ([[0, 0], [0, 0]], 0), ([[1, 2], [2, 4]], 1)],
)
def test_rank_examples(M, r):
    assert rank(Matrix(M)) == r


def test_nullspace_examples():
    assert nullspace_basis(Matrix.identity(2)) == []
    assert len(nullspace_basis(Matrix.zeros(2, 3))) == 3
    (v,) = nullspace_basis(Matrix([[1, 1]]))
    assert v[0] == -v[1] and not v[0].is_zero()


def test_nullspace_vectors_are_in_kernel():
    M = Matrix([[1, 2, 3, 4], [2, 4, 6, 8], [0, 1, I, 0]])
    basis = nullspace_basis(M)
    assert len(basis) == 4 - rank(M)
    for v in basis:
        assert all(x.is_zero() for x in M.apply(v))


def test_inverse_and_det():
    M = Matrix([[2, 1], [I, 3]])
    assert M @ M.inverse() == Matrix.identity(2)
    assert M.det() == Scalar(6) - I
    with pytest.raises(ZeroDivisionError):
        Matrix([[1, 2], [2, 4]]).inverse()


def test_matmul_against_entrywise_definition():
    A = Matrix([[1, Scalar(Fraction(1, 2), 1)], [0, -3]])
    B = Matrix([[Scalar(0, Fraction(2, 3)), 1, 0], [5, 0, Fraction(1, 7)]])
    C = A @ B
    for i in range(2):
        for j in range(3):
            assert C[i, j] == A[i, 0] * B[0, j] + A[i, 1] * B[1, j]


def test_solve_linear():
    M = Matrix([[1, 1], [1, -1]])
    assert solve_linear(M, [Scalar(3), Scalar(1)]) == [Scalar(2), Scalar(1)]
    assert solve_linear(Matrix([[1, 1], [1, 1]]), [Scalar(1), Scalar(2)]) is None


def test_hpoly_gcd_examples():
    assert hpoly_gcd(MU * LAM, LAM * LAM) == LAM
    p = (MU + LAM).scale(3)
    assert hpoly_gcd(p, HomoPoly2.zero()) == p.normalize()
    g = hpoly_gcd(MU * MU - LAM * LAM, MU + LAM)
    assert g == (MU + LAM).normalize()
    assert (MU * MU - LAM * LAM).exact_div(g) * g == MU * MU - LAM * LAM


def test_factor_mu_lambda():
    f = hpoly_linear_factorization(MU * LAM)
    assert f.mu_power == 1
    assert f.roots == ((Scalar(0), 1),)
    assert f.fully_factored


def test_factor_three_distinct_points():
    p = LAM * (MU + LAM) * (MU.scale(2) + LAM)
    f = hpoly_linear_factorization(p)
    assert f.mu_power == 0
    assert f.roots == ((Scalar(0), 1), (Scalar(1), 1), (Scalar(2), 1))
    assert f.fully_factored
    assert f.expand() == p


def test_factor_gaussian_roots():
    # mu^2 + lam^2 = (mu i + lam)(-mu i + lam)
    f = hpoly_linear_factorization(MU * MU + LAM * LAM)
    assert f.fully_factored
    assert {x for x, _ in f.roots} == {I, -I}


def test_factor_irreducible_residual():
    p = MU * MU + (LAM * LAM).scale(2)
    f = hpoly_linear_factorization(p)
    assert not f.fully_factored
    assert f.roots == ()
    assert f.expand() == p


def test_factor_zero_raises():
    with pytest.raises(ZeroPolynomial):
        hpoly_linear_factorization(HomoPoly2.zero())
