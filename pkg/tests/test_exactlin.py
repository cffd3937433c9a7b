import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from conftest import GOLDEN, k_matrices
from toralcs.errors import (
    CapacityExceeded,
    Degenerate,
    DimensionMismatch,
    NotSymmetric,
    OddDiagonal,
    SingularMatrix,
)
from toralcs.exactlin import (
    HYPERBOLIC_PLANE,
    block_diagonal,
    congruent,
    determinant,
    e8_cartan,
    identity,
    integer_inverse,
    matmul,
    rank,
    rational_inverse,
    signature,
    smith_normal_form,
    validate_k_matrix,
)
from toralcs.samples import random_unimodular

int_matrices = st.integers(1, 4).flatmap(
    lambda n: st.lists(st.lists(st.integers(-6, 6), min_size=n, max_size=n), min_size=n, max_size=n)
)


def _symmetrize(rows):
    n = len(rows)
    return [[rows[min(i, j)][max(i, j)] for j in range(n)] for i in range(n)]


# -- Smith normal form ---------------------------------------------------------


def test_snf_golden():
    d = smith_normal_form(GOLDEN)
    assert d.diagonal == (1, 3)
    assert matmul(matmul(d.U, d.D), d.V) == GOLDEN


def test_snf_identity():
    d = smith_normal_form(identity(3))
    assert d.diagonal == (1, 1, 1)
    assert matmul(matmul(d.U, d.D), d.V) == identity(3)


def test_snf_hyperbolic_plane_is_unimodular():
    assert smith_normal_form(HYPERBOLIC_PLANE).diagonal == (1, 1)


def test_snf_singular_raises():
    with pytest.raises(SingularMatrix):
        smith_normal_form([[1, 2], [2, 4]])


def test_snf_is_deterministic():
    A = [[4, 6, 2], [6, 2, 0], [2, 0, 8]]
    assert smith_normal_form(A) == smith_normal_form(A)


@given(int_matrices)
def test_snf_decomposition(A):
    if determinant(A) == 0:
        with pytest.raises(SingularMatrix):
            smith_normal_form(A)
        return
    d = smith_normal_form(A)
    assert matmul(matmul(d.U, d.D), d.V) == tuple(tuple(r) for r in A)
    assert abs(determinant(d.U)) == 1 and abs(determinant(d.V)) == 1
    diag = d.diagonal
    assert all(x > 0 for x in diag)
    assert all(diag[i + 1] % diag[i] == 0 for i in range(len(diag) - 1))
    n = len(A)
    assert all(d.D[i][j] == 0 for i in range(n) for j in range(n) if i != j)
    assert tuple(x for x in diag if x > 1) == oracles.nontrivial_invariant_factors(A)


# -- determinant, inverse, rank ------------------------------------------------


@given(int_matrices)
def test_determinant_matches_sympy(A):
    assert determinant(A) == oracles.det(A)


@given(int_matrices)
def test_rational_inverse(A):
    if determinant(A) == 0:
        with pytest.raises(SingularMatrix):
            rational_inverse(A)
        return
    inv = rational_inverse(A)
    assert inv == tuple(tuple(r) for r in oracles.inverse(A))
    assert matmul(A, inv) == identity(len(A))


def test_rational_inverse_golden():
    assert rational_inverse(GOLDEN) == (
        (Fraction(2, 3), Fraction(-1, 3)),
        (Fraction(-1, 3), Fraction(2, 3)),
    )


def test_integer_inverse_of_unimodular():
    P = random_unimodular(4, random.Random(3))
    assert matmul(P, integer_inverse(P)) == identity(4)


def test_rank_rectangular():
    assert rank([[1, 2, 3], [2, 4, 6]]) == 1
    assert rank([[1, 0], [0, 1], [1, 1]]) == 2
    assert rank([]) == 0


# -- signature -----------------------------------------------------------------


def test_signature_examples():
    assert signature(GOLDEN).sigma == 2
    assert signature(e8_cartan()) == signature(identity(8))
    assert signature(e8_cartan()).n_plus == 8
    s = signature(HYPERBOLIC_PLANE)
    assert (s.n_plus, s.n_minus, s.n_zero) == (1, 1, 0)
    assert signature([[0, 0], [0, 0]]).n_zero == 2
    assert signature([[Fraction(1, 2), 0], [0, Fraction(-3, 7)]]).sigma == 0


def test_signature_rejects_asymmetric():
    with pytest.raises(NotSymmetric):
        signature([[1, 2], [3, 4]])


@given(int_matrices)
def test_signature_matches_eigenvalues(A):
    M = _symmetrize(A)
    s = signature(M)
    assert s.n_plus + s.n_minus + s.n_zero == len(M)
    assert s.n_zero == len(M) - rank(M)
    assert s.sigma == oracles.float_signature(M)


@given(k_matrices(max_n=4, max_det=200), st.integers(0, 10**6))
def test_signature_invariant_under_congruence(K, seed):
    P = random_unimodular(K.n, random.Random(seed))
    assert signature(congruent(K.entries, P)) == K.signature


# -- validation ----------------------------------------------------------------


def test_validate_golden():
    K = validate_k_matrix(GOLDEN)
    assert K.det == 3 and K.sigma == 2
    assert K.inverse == rational_inverse(GOLDEN)
    assert validate_k_matrix(K) is K


def test_e8_is_even_unimodular():
    K = validate_k_matrix(e8_cartan())
    assert K.det == 1
    assert K.sigma == 8


@pytest.mark.parametrize(
    "A, error",
    [
        ([[1]], OddDiagonal),
        ([[2, 1], [1, 3]], OddDiagonal),
        ([[2, 1], [0, 2]], NotSymmetric),
        ([[2, 2], [2, 2]], Degenerate),
        ([[0]], Degenerate),
        ([[2, 0]], DimensionMismatch),
        ([], DimensionMismatch),
    ],
)
def test_validate_rejects(A, error):
    with pytest.raises(error):
        validate_k_matrix(A)


def test_odd_diagonal_reports_index():
    with pytest.raises(OddDiagonal) as info:
        validate_k_matrix([[2, 0, 0], [0, 2, 0], [0, 0, 5]])
    assert info.value.index == 2
    assert info.value.reason == "OddDiagonal"


def test_validate_dimension_cap():
    with pytest.raises(CapacityExceeded):
        validate_k_matrix(identity(4), max_dimension=3)


def test_negation_and_direct_sum():
    K = validate_k_matrix(GOLDEN)
    assert (-K).sigma == -2
    S = K.direct_sum(validate_k_matrix(HYPERBOLIC_PLANE))
    assert S.entries == block_diagonal(GOLDEN, HYPERBOLIC_PLANE)
    assert S.det == -3
