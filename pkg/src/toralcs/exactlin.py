"""Exact integer and rational linear algebra.

Matrices are tuples of row tuples holding Python ints or
:class:`fractions.Fraction`; nothing in this module touches floating point.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from . import limits
from .errors import (
    Degenerate,
    DimensionMismatch,
    NotSymmetric,
    OddDiagonal,
    SingularMatrix,
)


# ----------------------------------------------------------------------------
# small helpers
# ----------------------------------------------------------------------------


def as_int_matrix(rows):
    """Coerce a nested sequence (or numpy array) to a square tuple-of-tuples of ints."""
    out = []
    for row in rows:
        new = []
        for a in row:
            if isinstance(a, Fraction):
                if a.denominator != 1:
                    raise ValueError(f"non-integer entry {a}")
                a = a.numerator
            elif isinstance(a, float):
                if not a.is_integer():
                    raise ValueError(f"non-integer entry {a}")
            new.append(int(a))
        out.append(tuple(new))
    n = len(out)
    if any(len(r) != n for r in out):
        raise DimensionMismatch("matrix is not square")
    return tuple(out)


def as_rat_matrix(rows):
    return tuple(tuple(Fraction(a) for a in row) for row in rows)


def identity(n):
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def transpose(A):
    return tuple(zip(*A)) if A else ()


def matmul(A, B):
    Bt = transpose(B)
    return tuple(tuple(sum(a * b for a, b in zip(row, col)) for col in Bt) for row in A)


def matvec(A, x):
    return tuple(sum(a * b for a, b in zip(row, x)) for row in A)


def congruent(M, P):
    """Return P^T M P."""
    return matmul(matmul(transpose(P), M), P)


def block_diagonal(*blocks):
    n = sum(len(b) for b in blocks)
    out = [[0] * n for _ in range(n)]
    k = 0
    for b in blocks:
        for i, row in enumerate(b):
            for j, a in enumerate(row):
                out[k + i][k + j] = a
        k += len(b)
    return tuple(tuple(r) for r in out)


def is_symmetric(A):
    n = len(A)
    return all(A[i][j] == A[j][i] for i in range(n) for j in range(i + 1, n))


def determinant(A):
    """Determinant of an integer matrix by fraction-free Bareiss elimination."""
    M = [list(r) for r in as_int_matrix(A)]
    n = len(M)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k] != 0:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


def rank(A):
    """Rank of a (possibly rectangular) rational matrix."""
    M = [[Fraction(a) for a in row] for row in A]
    if not M:
        return 0
    rows, cols = len(M), len(M[0])
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if M[i][c] != 0), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        for i in range(r + 1, rows):
            if M[i][c] != 0:
                f = M[i][c] / M[r][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        r += 1
        if r == rows:
            break
    return r


# ----------------------------------------------------------------------------
# Smith normal form
# ----------------------------------------------------------------------------


@dataclass(frozen=True)
class SnfDecomposition:
    """``U @ D @ V == A`` with ``U``, ``V`` unimodular and ``D`` diagonal.

    The diagonal satisfies ``d_1 | d_2 | ... | d_n`` and ``d_i >= 0``.
    """

    U: tuple
    D: tuple
    V: tuple

    @property
    def diagonal(self):
        return tuple(self.D[i][i] for i in range(len(self.D)))


def smith_normal_form(A) -> SnfDecomposition:
    """Smith normal form of a nonsingular square integer matrix.

    Pivot rule: the nonzero entry of smallest absolute value in the
    remaining block, ties broken in row-major order.
    """
    A = as_int_matrix(A)
    n = len(A)
    if determinant(A) == 0:
        raise SingularMatrix("Smith normal form requested for a singular matrix")

    B = [list(r) for r in A]
    U = [list(r) for r in identity(n)]
    V = [list(r) for r in identity(n)]

    # Invariant: A == U @ B @ V.  Row ops on B act on U's columns by the
    # inverse operation; column ops on B act on V's rows likewise.
    def swap_rows(i, j):
        B[i], B[j] = B[j], B[i]
        for row in U:
            row[i], row[j] = row[j], row[i]

    def swap_cols(i, j):
        for row in B:
            row[i], row[j] = row[j], row[i]
        V[i], V[j] = V[j], V[i]

    def add_row(i, j, c):  # row_i += c * row_j
        B[i] = [a + c * b for a, b in zip(B[i], B[j])]
        for row in U:
            row[j] -= c * row[i]

    def add_col(j, i, c):  # col_j += c * col_i
        for row in B:
            row[j] += c * row[i]
        V[i] = [a - c * b for a, b in zip(V[i], V[j])]

    def negate_row(i):
        B[i] = [-a for a in B[i]]
        for row in U:
            row[i] = -row[i]

    for t in range(n):
        while True:
            best = None
            for i in range(t, n):
                for j in range(t, n):
                    a = abs(B[i][j])
                    if a and (best is None or a < best[0]):
                        best = (a, i, j)
            _, pi, pj = best
            if pi != t:
                swap_rows(t, pi)
            if pj != t:
                swap_cols(t, pj)
            p = B[t][t]
            for i in range(t + 1, n):
                if B[i][t]:
                    add_row(i, t, -(B[i][t] // p))
            for j in range(t + 1, n):
                if B[t][j]:
                    add_col(j, t, -(B[t][j] // p))
            if any(B[i][t] for i in range(t + 1, n)) or any(B[t][j] for j in range(t + 1, n)):
                continue
            bad = next(
                (i for i in range(t + 1, n) for j in range(t + 1, n) if B[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if B[t][t] < 0:
            negate_row(t)

    return SnfDecomposition(
        U=tuple(tuple(r) for r in U),
        D=tuple(tuple(r) for r in B),
        V=tuple(tuple(r) for r in V),
    )


# ----------------------------------------------------------------------------
# rational inverse
# ----------------------------------------------------------------------------


def rational_inverse(A):
    """Exact inverse of a nonsingular integer (or rational) matrix."""
    M = [[Fraction(a) for a in row] for row in A]
    n = len(M)
    if any(len(r) != n for r in M):
        raise DimensionMismatch("matrix is not square")
    aug = [row + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(M)]
    for c in range(n):
        piv = next((i for i in range(c, n) if aug[i][c] != 0), None)
        if piv is None:
            raise SingularMatrix("matrix is singular")
        aug[c], aug[piv] = aug[piv], aug[c]
        p = aug[c][c]
        aug[c] = [a / p for a in aug[c]]
        for i in range(n):
            if i != c and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[c])]
    return tuple(tuple(row[n:]) for row in aug)


def integer_inverse(A):
    """Inverse of a unimodular integer matrix, as an integer matrix."""
    inv = rational_inverse(A)
    if any(a.denominator != 1 for row in inv for a in row):
        raise ValueError("matrix is not unimodular")
    return tuple(tuple(a.numerator for a in row) for row in inv)


# ----------------------------------------------------------------------------
# signature
# ----------------------------------------------------------------------------


@dataclass(frozen=True)
class SignatureTriple:
    n_plus: int
    n_minus: int
    n_zero: int

    @property
    def sigma(self) -> int:
        return self.n_plus - self.n_minus


def signature(M) -> SignatureTriple:
    """Inertia of a symmetric rational matrix by congruence diagonalization.

    A zero pivot paired with a nonzero off-diagonal entry is split off as a
    hyperbolic 2x2 block, contributing one positive and one negative square.
    """
    M = [[Fraction(a) for a in row] for row in M]
    n = len(M)
    if any(len(r) != n for r in M):
        raise DimensionMismatch("matrix is not square")
    if not is_symmetric(M):
        raise NotSymmetric("signature requires a symmetric matrix")

    plus = minus = zero = 0
    active = list(range(n))
    while active:
        k = next((i for i in active if M[i][i] != 0), None)
        if k is not None:
            p = M[k][k]
            if p > 0:
                plus += 1
            else:
                minus += 1
            active.remove(k)
            for i in active:
                if M[i][k] != 0:
                    f = M[i][k] / p
                    for j in active:
                        M[i][j] -= f * M[k][j]
            for i in active:
                M[k][i] = M[i][k] = Fraction(0)
            continue
        # every remaining diagonal entry vanishes
        pair = next(((i, j) for i in active for j in active if j > i and M[i][j] != 0), None)
        if pair is None:
            zero += len(active)
            break
        i0, j0 = pair
        b = M[i0][j0]
        plus += 1
        minus += 1
        active.remove(i0)
        active.remove(j0)
        # Schur complement against [[0, b], [b, 0]], whose inverse is [[0, 1/b], [1/b, 0]]
        ci = {r: M[r][i0] for r in active}
        cj = {r: M[r][j0] for r in active}
        for r in active:
            for s in active:
                M[r][s] -= (ci[r] * cj[s] + cj[r] * ci[s]) / b
    return SignatureTriple(plus, minus, zero)


# ----------------------------------------------------------------------------
# K-matrices
# ----------------------------------------------------------------------------


@dataclass(frozen=True)
class KMatrix:
    """A validated even, integral, nondegenerate symmetric matrix.

    Build instances with :func:`validate_k_matrix`.
    """

    entries: tuple

    @property
    def n(self) -> int:
        return len(self.entries)

    @cached_property
    def det(self) -> int:
        return determinant(self.entries)

    @cached_property
    def snf(self) -> SnfDecomposition:
        return smith_normal_form(self.entries)

    @cached_property
    def signature(self) -> SignatureTriple:
        return signature(self.entries)

    @property
    def sigma(self) -> int:
        return self.signature.sigma

    @cached_property
    def inverse(self):
        return rational_inverse(self.entries)

    def __neg__(self):
        return KMatrix(tuple(tuple(-a for a in row) for row in self.entries))

    def direct_sum(self, other):
        return KMatrix(block_diagonal(self.entries, other.entries))

    def congruent(self, P):
        """``P^T K P`` for an integer matrix ``P`` (revalidated)."""
        return validate_k_matrix(congruent(self.entries, as_int_matrix(P)))

    def to_list(self):
        return [list(r) for r in self.entries]


def validate_k_matrix(A, max_dimension=limits.MAX_DIMENSION) -> KMatrix:
    """Check that ``A`` is an admissible K-matrix and wrap it."""
    if isinstance(A, KMatrix):
        return A
    A = as_int_matrix(A)
    n = len(A)
    if n == 0:
        raise DimensionMismatch("empty matrix")
    limits.check(n, max_dimension, "K-matrix dimension")
    if not is_symmetric(A):
        raise NotSymmetric("K-matrix must be symmetric")
    for i in range(n):
        if A[i][i] % 2:
            raise OddDiagonal(i, A[i][i])
    K = KMatrix(A)
    if K.det == 0:
        raise Degenerate("K-matrix has determinant 0")
    return K


# Standard even unimodular lattices, handy for stabilization checks.
HYPERBOLIC_PLANE = ((0, 1), (1, 0))


def e8_cartan():
    """Cartan matrix of E8 (Bourbaki labelling)."""
    edges = [(0, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (1, 3)]
    M = [[2 if i == j else 0 for j in range(8)] for i in range(8)]
    for i, j in edges:
        M[i][j] = M[j][i] = -1
    return tuple(tuple(r) for r in M)
