"""Kashiwara-Maslov index of Lagrangian triples over the rationals.

For Lagrangians ``L1, L2, L3`` of a symplectic space ``(V, w)`` the index is
the signature of ``Q(x1, x2, x3) = w(x1, x2) + w(x2, x3) + w(x3, x1)`` on
``L1 + L2 + L3``.  Subspaces are given by spanning vectors; everything is
computed with exact rationals.
"""

import random
from dataclasses import dataclass
from fractions import Fraction

from .cyclo import Phase
from .errors import DimensionMismatch, InternalMismatch, NotLagrangian
from .exactlin import KMatrix, as_rat_matrix, identity, rank, signature, validate_k_matrix


def _kron(A, B):
    return tuple(
        tuple(a * b for a in rowA for b in rowB) for rowA in A for rowB in B
    )


def _form(w, x, y):
    return sum(x[i] * w[i][j] * y[j] for i in range(len(x)) for j in range(len(y)) if w[i][j])


@dataclass(frozen=True)
class SymplecticSpace:
    form: tuple

    def __post_init__(self):
        w = as_rat_matrix(self.form)
        n = len(w)
        if n % 2 or any(len(r) != n for r in w):
            raise DimensionMismatch("symplectic form must be square of even size")
        if any(w[i][j] != -w[j][i] for i in range(n) for j in range(n)):
            raise ValueError("symplectic form must be antisymmetric")
        if rank(w) != n:
            raise ValueError("symplectic form must be nondegenerate")
        object.__setattr__(self, "form", w)

    @classmethod
    def standard(cls, m: int) -> "SymplecticSpace":
        """``w(e_i, e_{m+i}) = 1`` on ``Q^{2m}``."""
        n = 2 * m
        w = [[0] * n for _ in range(n)]
        for i in range(m):
            w[i][m + i] = 1
            w[m + i][i] = -1
        return cls(tuple(tuple(r) for r in w))

    @property
    def dim(self) -> int:
        return len(self.form)

    def omega(self, x, y) -> Fraction:
        return _form(self.form, x, y)

    def tensor(self, K) -> "SymplecticSpace":
        """``(V (x) R^r, w (x) K)``."""
        K = K.entries if isinstance(K, KMatrix) else K
        return SymplecticSpace(_kron(self.form, K))

    def direct_sum(self, other: "SymplecticSpace") -> "SymplecticSpace":
        a, b = self.dim, other.dim
        w = [[Fraction(0)] * (a + b) for _ in range(a + b)]
        for i in range(a):
            w[i][:a] = self.form[i]
        for i in range(b):
            w[a + i][a:] = other.form[i]
        return SymplecticSpace(tuple(tuple(r) for r in w))


def _vectors(L):
    return tuple(tuple(Fraction(a) for a in v) for v in L)


def is_lagrangian(V: SymplecticSpace, L) -> bool:
    L = _vectors(L)
    if any(len(v) != V.dim for v in L):
        raise DimensionMismatch("vector length does not match the symplectic space")
    if rank(L) * 2 != V.dim or len(L) * 2 != V.dim:
        return False
    return all(V.omega(x, y) == 0 for i, x in enumerate(L) for y in L[i + 1 :])


def _require_lagrangian(V, *Ls):
    out = []
    for L in Ls:
        if not is_lagrangian(V, L):
            raise NotLagrangian("subspace is not Lagrangian")
        out.append(_vectors(L))
    return out


def kashiwara_form(V: SymplecticSpace, L1, L2, L3):
    """Gram matrix of ``Q`` on ``L1 + L2 + L3`` in the given bases."""
    bases = (_vectors(L1), _vectors(L2), _vectors(L3))
    blocks = [(0, 1), (1, 2), (2, 0)]
    sizes = [len(b) for b in bases]
    offs = [0, sizes[0], sizes[0] + sizes[1]]
    n = sum(sizes)
    A = [[Fraction(0)] * n for _ in range(n)]
    for a, b in blocks:
        for i, x in enumerate(bases[a]):
            for j, y in enumerate(bases[b]):
                A[offs[a] + i][offs[b] + j] += V.omega(x, y)
    return tuple(tuple((A[i][j] + A[j][i]) / 2 for j in range(n)) for i in range(n))


def kashiwara_index(V: SymplecticSpace, L1, L2, L3) -> int:
    L1, L2, L3 = _require_lagrangian(V, L1, L2, L3)
    return signature(kashiwara_form(V, L1, L2, L3)).sigma


def tensor_lagrangian(L, r: int):
    """Spanning vectors of ``L (x) R^r``."""
    I = identity(r)
    return tuple(tuple(a * e for a in v for e in row) for v in _vectors(L) for row in I)


def mu_k(K, V: SymplecticSpace, L1, L2, L3) -> int:
    """Maslov index of ``L_i (x) t`` for the form ``w (x) K``, computed two ways.

    The scaled index ``sigma(K) * mu(L1, L2, L3)`` is compared with the direct
    index on the tensor space; disagreement raises :class:`InternalMismatch`.
    """
    K = validate_k_matrix(K)
    scaled = K.sigma * kashiwara_index(V, L1, L2, L3)
    r = K.n
    direct = kashiwara_index(
        V.tensor(K),
        tensor_lagrangian(L1, r),
        tensor_lagrangian(L2, r),
        tensor_lagrangian(L3, r),
    )
    if scaled != direct:
        raise InternalMismatch(f"sigma(K) * mu = {scaled} but the tensor index is {direct}")
    return scaled


def bks_cocycle_phase(mu: int) -> Phase:
    """``exp(i*pi*mu/4)``."""
    return Phase(Fraction(mu, 4))


def cocycle_sum(V: SymplecticSpace, L1, L2, L3, L4) -> int:
    """``mu(1,2,3) - mu(1,2,4) + mu(1,3,4) - mu(2,3,4)``; zero for a cocycle."""
    mu = kashiwara_index
    return mu(V, L1, L2, L3) - mu(V, L1, L2, L4) + mu(V, L1, L3, L4) - mu(V, L2, L3, L4)


def direct_sum_lagrangian(L, M, dim_l: int, dim_m: int):
    """``L + M`` inside ``V + W`` where ``dim V = dim_l`` and ``dim W = dim_m``."""
    zl = (Fraction(0),) * dim_l
    zm = (Fraction(0),) * dim_m
    return tuple(v + zm for v in _vectors(L)) + tuple(zl + w for w in _vectors(M))


# ----------------------------------------------------------------------------
# random Lagrangians
# ----------------------------------------------------------------------------


def standard_lagrangian(m: int):
    """Span of the first m basis vectors."""
    return tuple(tuple(Fraction(int(i == j)) for j in range(2 * m)) for i in range(m))


def random_symplectic_matrix(m: int, rng: random.Random, steps: int = 6, spread: int = 2):
    """Product of elementary symplectic matrices for the standard form.

    Factors are shears ``[[1, S], [0, 1]]``, ``[[1, 0], [S, 1]]`` with
    symmetric integer ``S`` and ``diag(A, A^-T)`` with ``A`` an elementary
    unimodular matrix.
    """
    n = 2 * m
    M = [[int(i == j) for j in range(n)] for i in range(n)]

    def apply(E):
        nonlocal M
        M = [[sum(E[i][k] * M[k][j] for k in range(n)) for j in range(n)] for i in range(n)]

    for _ in range(steps):
        kind = rng.randrange(3)
        E = [[int(i == j) for j in range(n)] for i in range(n)]
        if kind < 2:
            S = [[0] * m for _ in range(m)]
            for i in range(m):
                for j in range(i, m):
                    S[i][j] = S[j][i] = rng.randint(-spread, spread)
            for i in range(m):
                for j in range(m):
                    if kind == 0:
                        E[i][m + j] = S[i][j]
                    else:
                        E[m + i][j] = S[i][j]
        elif m > 1:
            i, j = rng.sample(range(m), 2)
            c = rng.randint(-spread, spread)
            # A = 1 + c e_ij, A^-T = 1 - c e_ji
            E[i][j] = c
            E[m + j][m + i] = -c
        apply(E)
    return tuple(tuple(r) for r in M)


def random_lagrangian(m: int, rng: random.Random, steps: int = 6):
    """Image of the standard Lagrangian under a random integer symplectic matrix."""
    M = random_symplectic_matrix(m, rng, steps)
    return tuple(
        tuple(Fraction(M[r][c]) for r in range(2 * m)) for c in range(m)
    )
