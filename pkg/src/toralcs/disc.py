"""The discriminant group of a K-matrix and its finite quadratic data.

``G_K = Z^n / K Z^n`` is identified with ``Z/d_1 + ... + Z/d_k`` through the
Smith normal form ``K = U D V``: the class of ``x`` has canonical coordinates
``(U^-1 x)_i mod d_i`` for the invariant factors ``d_i > 1``.  Elements are
plain tuples of canonical coordinates and are enumerated in lexicographic
order, so the zero element (the vacuum) always comes first.

Phases live over the common denominator ``N = exponent(G)``: the quadratic
form is ``exp(i*pi*x^T K^-1 x)`` and ``x^T K^-1 x`` lies in ``Z/N``.
"""

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import limits
from .cyclo import CycloSum, Phase, PhaseArray, approx
from .errors import DimensionMismatch
from .exactlin import KMatrix, integer_inverse, validate_k_matrix


def _as_array(rows):
    """Integer ndarray, int64 when safe and object dtype otherwise."""
    rows = [list(r) for r in rows]
    biggest = max((abs(a) for r in rows for a in r), default=0)
    return np.array(rows, dtype=np.int64 if biggest < 2**20 else object).reshape(len(rows), -1)


def _safe_pair(X, A):
    """Promote to object dtype if x^T A y could overflow int64."""
    n = max(A.shape[0], 1)
    bound = int(np.abs(X).max(initial=0)) ** 2 * int(np.abs(A).max(initial=0)) * n * n * 2
    if bound >= 2**62:
        return X.astype(object), A.astype(object)
    return X, A


class DiscGroup:
    """``G_K`` with its canonical coordinates, quadratic form and bicharacter."""

    def __init__(self, K: KMatrix):
        self.k_matrix = K
        snf = K.snf
        diag = snf.diagonal
        self._positions = tuple(i for i, d in enumerate(diag) if d > 1)
        self.invariant_factors = tuple(diag[i] for i in self._positions)
        uinv = integer_inverse(snf.U)
        # rows of U^-1 and columns of U at the nontrivial positions
        self.to_canonical = tuple(uinv[i] for i in self._positions)
        self.from_canonical = tuple(tuple(row[i] for i in self._positions) for row in snf.U)
        self.order = math.prod(self.invariant_factors)
        self.exponent = self.invariant_factors[-1] if self.invariant_factors else 1
        inv = K.inverse
        # N * K^-1 is integral
        self.scaled_inverse = tuple(
            tuple(int(a * self.exponent) for a in row) for row in inv
        )

    def __repr__(self):
        return f"DiscGroup(invariant_factors={list(self.invariant_factors)})"

    @property
    def n(self) -> int:
        return self.k_matrix.n

    @property
    def rank(self) -> int:
        return len(self.invariant_factors)

    @property
    def zero(self) -> tuple:
        return (0,) * self.rank

    # -- coordinates --------------------------------------------------------

    def project(self, x) -> tuple:
        x = tuple(int(a) for a in x)
        if len(x) != self.n:
            raise DimensionMismatch(f"expected a vector of length {self.n}, got {len(x)}")
        return tuple(
            sum(a * b for a, b in zip(row, x)) % d
            for row, d in zip(self.to_canonical, self.invariant_factors)
        )

    def lift(self, e) -> tuple:
        e = self._check(e)
        return tuple(sum(a * c for a, c in zip(row, e)) for row in self.from_canonical)

    def _check(self, e) -> tuple:
        e = tuple(int(a) for a in e)
        if len(e) != self.rank:
            raise DimensionMismatch(f"expected {self.rank} canonical coordinates, got {len(e)}")
        return tuple(a % d for a, d in zip(e, self.invariant_factors))

    def add(self, u, v) -> tuple:
        return tuple((a + b) % d for a, b, d in zip(u, v, self.invariant_factors))

    def neg(self, u) -> tuple:
        return tuple(-a % d for a, d in zip(u, self.invariant_factors))

    def scale(self, u, k: int) -> tuple:
        return tuple(a * k % d for a, d in zip(u, self.invariant_factors))

    def element_order(self, u) -> int:
        o = 1
        for a, d in zip(u, self.invariant_factors):
            o = math.lcm(o, d // math.gcd(a, d))
        return o

    def index(self, u) -> int:
        """Position of ``u`` in the lexicographic enumeration."""
        i = 0
        for a, d in zip(u, self.invariant_factors):
            i = i * d + a % d
        return i

    def element(self, i: int) -> tuple:
        out = []
        for d in reversed(self.invariant_factors):
            i, r = divmod(i, d)
            out.append(r)
        return tuple(reversed(out))

    def elements(self, cap=None) -> list:
        limits.check(self.order, limits.element_cap(cap), "discriminant group")
        return list(itertools.product(*(range(d) for d in self.invariant_factors)))

    def generators(self) -> list:
        """Canonical generators, one per invariant factor."""
        return [tuple(int(i == j) for j in range(self.rank)) for i in range(self.rank)]

    # -- quadratic data -----------------------------------------------------

    def _xax(self, x, y) -> int:
        A = self.scaled_inverse
        return sum(x[i] * A[i][j] * y[j] for i in range(len(x)) for j in range(len(y)))

    def q_form(self, u) -> Phase:
        x = self.lift(u)
        return Phase(Fraction(self._xax(x, x), self.exponent))

    def bicharacter(self, u, v) -> Phase:
        return Phase(Fraction(2 * self._xax(self.lift(u), self.lift(v)), self.exponent))

    def bicharacter_polarized(self, u, v) -> Phase:
        return self.q_form(self.add(u, v)) / (self.q_form(u) * self.q_form(v))

    def lifts(self, cap=None) -> np.ndarray:
        """Matrix whose rows are the lifts of all elements, in enumeration order."""
        return _as_array([self.lift(e) for e in self.elements(cap)])

    def q_table(self, cap=None) -> PhaseArray:
        if self.rank == 0:
            return PhaseArray(np.zeros(1, dtype=np.int64), 1)
        X, A = _safe_pair(self.lifts(cap), _as_array(self.scaled_inverse))
        nums = ((X @ A) * X).sum(axis=1)
        return PhaseArray(np.asarray(nums % (2 * self.exponent), dtype=np.int64), self.exponent)

    def omega_table(self, cap=None) -> PhaseArray:
        limits.check(self.order, limits.LABEL_CAP if cap is None else cap, "bicharacter table")
        if self.rank == 0:
            return PhaseArray(np.zeros((1, 1), dtype=np.int64), 1)
        X, A = _safe_pair(self.lifts(cap), _as_array(self.scaled_inverse))
        nums = 2 * (X @ A @ X.T)
        return PhaseArray(np.asarray(nums % (2 * self.exponent), dtype=np.int64), self.exponent)

    def is_nondegenerate(self, cap=None) -> bool:
        W = self.omega_table(cap).numerators
        return bool(np.all(np.any(W[1:] != 0, axis=1)))


def discriminant_group(K) -> DiscGroup:
    return DiscGroup(validate_k_matrix(K))


def project(G: DiscGroup, x) -> tuple:
    return G.project(x)


def lift(G: DiscGroup, e) -> tuple:
    return G.lift(e)


def q_form(G: DiscGroup, u) -> Phase:
    return G.q_form(u)


def bicharacter(G: DiscGroup, u, v) -> Phase:
    return G.bicharacter(u, v)


def enumerate_elements(G: DiscGroup, cap=None) -> list:
    return G.elements(cap)


# ----------------------------------------------------------------------------
# Gauss sums and the central charge
# ----------------------------------------------------------------------------


@dataclass(frozen=True)
class GaussMilgram:
    sum: CycloSum
    sigma_mod8: int
    verified: bool


def gauss_sum(G: DiscGroup, cap=None) -> CycloSum:
    """``sum_u q(u)`` as an exact cyclotomic sum."""
    q = G.q_table(cap)
    counts = np.bincount(q.numerators, minlength=2 * q.modulus)
    return CycloSum.from_counts(q.modulus, counts)


def matches_gauss_milgram(total: CycloSum, order: int, c: int) -> bool:
    """Whether ``total == sqrt(order) * exp(2 pi i c / 8)``.

    Squares are compared exactly; the remaining sign is read off the float
    value, whose modulus is ``sqrt(order) >= 1`` so the sign test is robust.
    """
    if not total * total == CycloSum.from_phases([Phase(Fraction(c, 2))], [order]):
        return False
    z = approx(total) * Phase(Fraction(-c, 4)).to_complex()
    return z.real > 0


def gauss_milgram(G: DiscGroup, cap=None) -> GaussMilgram:
    total = gauss_sum(G, cap)
    c = G.k_matrix.sigma % 8
    return GaussMilgram(total, c, matches_gauss_milgram(total, G.order, c))


def gauss_central_charge(G: DiscGroup, cap=None):
    """The class c mod 8 determined by the Gauss sum alone (None if none fits)."""
    total = gauss_sum(G, cap)
    for c in range(8):
        if matches_gauss_milgram(total, G.order, c):
            return c
    return None


def central_charge_mod8(K) -> int:
    return validate_k_matrix(K).sigma % 8
