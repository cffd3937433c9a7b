"""Genus-g state spaces and the S and T operators in the Bohr-Sommerfeld basis.

Labels of the genus-g basis are g-tuples of group elements in lexicographic
order (vacuum tuple first).  The S operator is ``norm * Omega_g`` with
``norm = |G|^(-g/2)`` kept exact, and T is the diagonal of products of
``q`` values.  All checks are exact: sums of phases are certified zero by
cyclotomic reduction, never by a float tolerance.
"""

import itertools
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import limits
from .cyclo import CycloSum, Phase, PhaseArray, exponent_histogram, vanishing_rows
from .disc import DiscGroup, matches_gauss_milgram
from .errors import CapacityExceeded


@dataclass(frozen=True)
class HalfPowerScalar:
    """The positive real number ``base ** (half_exponent / 2)``."""

    base: int
    half_exponent: int

    def __post_init__(self):
        if self.base < 1:
            raise ValueError("base must be a positive integer")

    def squared(self) -> Fraction:
        return Fraction(self.base) ** self.half_exponent

    def __eq__(self, other):
        if not isinstance(other, HalfPowerScalar):
            return NotImplemented
        return self.squared() == other.squared()

    def __hash__(self):
        return hash(self.squared())

    def __mul__(self, other):
        if not isinstance(other, HalfPowerScalar):
            return NotImplemented
        if other.base == 1 or other.half_exponent == 0:
            return self
        if self.base == 1 or self.half_exponent == 0:
            return other
        if self.base != other.base:
            raise ValueError("products of different bases are not represented")
        return HalfPowerScalar(self.base, self.half_exponent + other.half_exponent)

    @property
    def value(self) -> float:
        return self.base ** (self.half_exponent / 2)

    def __str__(self):
        if self.half_exponent == 0 or self.base == 1:
            return "1"
        if self.half_exponent % 2 == 0:
            e = self.half_exponent // 2
            return str(self.base**e) if e > 0 else f"{self.base}^({e})"
        return f"{self.base}^({self.half_exponent}/2)"

    def to_json(self):
        return {"base": self.base, "half_exponent": self.half_exponent}


@dataclass(frozen=True)
class ModularData:
    group: DiscGroup
    genus: int
    labels: tuple
    t: PhaseArray
    omega: PhaseArray
    norm: HalfPowerScalar

    @property
    def size(self) -> int:
        return len(self.labels)

    def s_entry(self, i: int, j: int):
        """(phase, norm) with ``S[i, j] = norm * phase``."""
        return self.omega[i, j], self.norm

    def to_json(self):
        return {
            "labels": [[list(e) for e in lab] for lab in self.labels],
            "t": self.t.to_strings(),
            "omega": self.omega.to_strings(),
            "norm": self.norm.to_json(),
        }


def state_space_dimension(G: DiscGroup, g: int) -> int:
    """Number of Bohr-Sommerfeld leaves at genus g, ``|G|^g``."""
    if g < 0:
        raise ValueError("genus must be nonnegative")
    return G.order**g


def _check_labels(G: DiscGroup, g: int, cap):
    cap = limits.LABEL_CAP if cap is None else cap
    limits.check(G.order**g, cap, f"genus-{g} label set")


def genus_labels(G: DiscGroup, g: int, cap=None) -> tuple:
    _check_labels(G, g, cap)
    return tuple(itertools.product(G.elements(), repeat=g))


def _tensor_power_t(t1: np.ndarray, g: int) -> np.ndarray:
    out = np.zeros(1, dtype=np.int64)
    for _ in range(g):
        out = (out[:, None] + t1[None, :]).reshape(-1)
    return out


def _tensor_power_omega(w1: np.ndarray, g: int) -> np.ndarray:
    out = np.zeros((1, 1), dtype=np.int64)
    m = w1.shape[0]
    for _ in range(g):
        k = out.shape[0]
        out = (out[:, None, :, None] + w1[None, :, None, :]).reshape(k * m, k * m)
    return out


def t_matrix(G: DiscGroup, g: int = 1, cap=None) -> PhaseArray:
    """Diagonal of the Dehn-twist operator: ``prod_j q(u_j)`` per label."""
    _check_labels(G, g, cap)
    q = G.q_table()
    return PhaseArray(_tensor_power_t(q.numerators, g), q.modulus)


def modular_data(G: DiscGroup, g: int = 1, cap=None) -> ModularData:
    labels = genus_labels(G, g, cap)
    q = G.q_table()
    w = G.omega_table(cap=max(G.order, 1))
    N = q.modulus
    return ModularData(
        group=G,
        genus=g,
        labels=labels,
        t=PhaseArray(_tensor_power_t(q.numerators, g), N),
        omega=PhaseArray(_tensor_power_omega(w.numerators, g), N),
        norm=HalfPowerScalar(G.order, -g),
    )


def s_matrix(G: DiscGroup, g: int = 1, cap=None) -> ModularData:
    """The genus-g S operator, ``|G|^(-g/2) * Omega_g``, with its T diagonal."""
    return modular_data(G, g, cap)


def s_entry(G: DiscGroup, u, v):
    """Single S entry for labels ``u``, ``v`` (g-tuples of elements) without materializing."""
    phase = Phase(0)
    for a, b in zip(u, v, strict=True):
        phase = phase * G.bicharacter(a, b)
    return phase, HalfPowerScalar(G.order, -len(u))


def t_entry(G: DiscGroup, u) -> Phase:
    phase = Phase(0)
    for a in u:
        phase = phase * G.q_form(a)
    return phase


def cylinder_factor(G: DiscGroup, g: int) -> HalfPowerScalar:
    """Normalization of the cylinder over a genus-g surface, ``|det K|^(g/2)``."""
    return HalfPowerScalar(G.order, g)


# ----------------------------------------------------------------------------
# exact checks
# ----------------------------------------------------------------------------


def verify_s_unitary(data: ModularData) -> bool:
    """Certify ``S S^dagger = 1`` exactly.

    Off-diagonal: ``sum_v conj(Omega[u, v]) Omega[u', v]`` is cyclotomically
    zero for every pair ``u != u'``.  Diagonal: ``norm^2 * size == 1``.
    """
    W = data.omega.numerators
    N = data.omega.modulus
    m = W.shape[0]
    if W.shape != (m, m) or data.norm.squared() * m != 1:
        return False
    for u in range(m - 1):
        diff = W[u + 1 :] - W[u]
        if not np.all(vanishing_rows(exponent_histogram(diff, N), N)):
            return False
    return True


@dataclass(frozen=True)
class ModularRelations:
    s2_is_charge_conjugation: bool
    st_cubed_matches: bool


def _charge_conjugation(data: ModularData) -> np.ndarray:
    G = data.group
    return np.array([G.index(G.neg(lab[0])) for lab in data.labels], dtype=np.int64)


def _squared_counts(P: np.ndarray, N: int, u: int) -> np.ndarray:
    """Row u of P @ P for a monomial matrix P, as exponent histograms (w, 2N)."""
    return exponent_histogram((P[u][:, None] + P).T, N)


def verify_modular_relations(data: ModularData, c_mod8: int, cap=None) -> ModularRelations:
    """Diagnostic modular relations at genus 1.

    ``S^2 = C`` (charge conjugation ``u -> -u``) and the cubic relation.  With
    ``S = Omega / sqrt|G|`` (the inverse of the conjugate-kernel convention)
    the cubic relation reads ``(ST)^3 = exp(2 pi i c/8) S^4 = exp(2 pi i c/8)``.
    """
    if data.genus != 1:
        raise ValueError("modular relations are checked at genus 1 only")
    m = data.size
    cap = limits.RELATIONS_CAP if cap is None else cap
    if m > cap:
        raise CapacityExceeded(f"{m} labels exceed the relations cap {cap}")
    W = data.omega.numerators
    t = data.t.numerators
    N = data.omega.modulus
    M2 = 2 * N
    conj = _charge_conjugation(data)

    # S^2 = norm^2 * Omega^2 with norm^2 = 1/m, so Omega^2 must equal m * C.
    s2_ok = data.norm.squared() * m == 1
    for u in range(m):
        counts = _squared_counts(W, N, u)
        counts[conj[u], 0] -= m
        if not np.all(vanishing_rows(counts, N)):
            s2_ok = False
            break

    # (ST)^3 = m^(-3/2) (Omega T)^3 = lambda forces (Omega T)^3 = mu * 1
    # with mu = lambda * m^(3/2).
    P = (W + t[None, :]) % M2
    ks = np.arange(M2)[None, :]
    rows = np.arange(m)[:, None]
    cubes = np.empty((m, m, M2), dtype=np.int64)
    for u in range(m):
        c2 = _squared_counts(P, N, u)
        for x in range(m):
            idx = (ks - P[:, x][:, None]) % M2
            cubes[u, x] = c2[rows, idx].sum(axis=0)
    mu = cubes[0, 0].copy()
    expected = np.zeros_like(cubes)
    expected[np.arange(m), np.arange(m)] = mu
    st_ok = bool(np.all(vanishing_rows(cubes - expected, N)))
    if st_ok:
        st_ok = matches_gauss_milgram(CycloSum.from_counts(N, mu), m**3, c_mod8 % 8)
    return ModularRelations(bool(s2_ok), st_ok)
