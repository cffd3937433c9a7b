"""Reconstruction of finite quadratic data from (S, T) and equivalence of K-matrices.

Two K-matrices are equivalent at the level of measurable data when some
group isomorphism of their discriminant groups carries one quadratic form to
the other and the signatures agree mod 8.  The search fixes images of the
canonical generators one at a time, so any witness it returns is checked
against every element before being handed back.
"""

from dataclasses import dataclass, field

import numpy as np

from . import limits
from .cyclo import CycloSum, Phase, PhaseArray, _lcm
from .disc import DiscGroup, _as_array, _safe_pair, matches_gauss_milgram
from .errors import (
    AmbiguousVacuum,
    DimensionMismatch,
    InternalMismatch,
    NoVacuumRow,
    NotClosed,
    PolarizationViolation,
)
from .exactlin import validate_k_matrix
from .modular import HalfPowerScalar


# ----------------------------------------------------------------------------
# reconstruction
# ----------------------------------------------------------------------------


@dataclass(frozen=True)
class ReconstructedTheory:
    """A finite quadratic module recovered from genus-one (S, T).

    Elements are the row labels ``0 .. order-1`` of the input matrices.
    """

    order: int
    add_table: np.ndarray
    neg_table: np.ndarray
    vacuum: int
    q_table: PhaseArray
    omega_table: PhaseArray

    def add(self, a: int, b: int) -> int:
        return int(self.add_table[a, b])

    def neg(self, a: int) -> int:
        return int(self.neg_table[a])

    def q(self, a: int) -> Phase:
        return self.q_table[a]

    def omega(self, a: int, b: int) -> Phase:
        return self.omega_table[a, b]

    def element_order(self, a: int) -> int:
        k, cur = 1, a
        while cur != self.vacuum:
            cur = self.add(cur, a)
            k += 1
        return k

    def validate(self):
        """Raise :class:`PolarizationViolation` unless ``q(a+b) = q(a) q(b) Omega(a, b)``."""
        N = _lcm(self.q_table.modulus, self.omega_table.modulus)
        q = self.q_table.lift(N).numerators
        w = self.omega_table.lift(N).numerators
        lhs = q[self.add_table]
        rhs = (q[:, None] + q[None, :] + w) % (2 * N)
        bad = np.argwhere(lhs != rhs)
        if len(bad):
            a, b = bad[0]
            raise PolarizationViolation(
                f"q({a}+{b}) != q({a}) q({b}) Omega({a},{b})"
            )
        if q[self.vacuum] != 0:
            raise PolarizationViolation("vacuum twist is not 1")
        return self

    def gauss_central_charge(self):
        """c mod 8 implied by the Gauss sum of ``q`` (None if no class fits)."""
        q = self.q_table
        total = CycloSum.from_counts(q.modulus, np.bincount(q.numerators, minlength=2 * q.modulus))
        for c in range(8):
            if matches_gauss_milgram(total, self.order, c):
                return c
        return None

    def invariant_factors(self) -> tuple:
        """Invariant factors of the reconstructed group, from element-order counts."""
        return _invariant_factors_from_orders([self.element_order(a) for a in range(self.order)])

    def to_json(self):
        return {
            "order": self.order,
            "vacuum": self.vacuum,
            "invariant_factors": list(self.invariant_factors()),
            "addition": self.add_table.tolist(),
            "q": self.q_table.to_strings(),
            "omega": self.omega_table.to_strings(),
            "c_mod8": self.gauss_central_charge(),
        }


def _invariant_factors_from_orders(orders) -> tuple:
    """Invariant factors of a finite abelian group given the multiset of element orders.

    For each prime p, the number of elements killed by p^k determines the
    p-primary partition.
    """
    orders = list(orders)
    n = len(orders)
    primes = sorted({p for o in orders for p in _prime_factors(o)})
    per_prime = {}
    for p in primes:
        # count of elements with p-part of order dividing p^k
        sizes = []
        k = 0
        while True:
            cnt = sum(1 for o in orders if _p_part(o, p) <= p**k)
            sizes.append(cnt)
            if cnt == n:
                break
            k += 1
        # log_p of |G[p^k]| minus |G[p^(k-1)]| gives #cyclic factors of order >= p^k
        logs = [_ilog(_p_part(s, p), p) for s in sizes]
        parts = []
        for j in range(1, len(logs)):
            parts.append(logs[j] - logs[j - 1])
        # parts[j-1] = number of cyclic p-factors with exponent >= j
        exps = []
        for j in range(len(parts)):
            count_exact = parts[j] - (parts[j + 1] if j + 1 < len(parts) else 0)
            exps += [j + 1] * count_exact
        per_prime[p] = sorted(exps, reverse=True)
    length = max((len(v) for v in per_prime.values()), default=0)
    factors = []
    for i in range(length):
        d = 1
        for p, exps in per_prime.items():
            if i < len(exps):
                d *= p ** exps[i]
        factors.append(d)
    return tuple(sorted(factors))


def _prime_factors(n):
    out = set()
    p = 2
    while p * p <= n:
        while n % p == 0:
            out.add(p)
            n //= p
        p += 1
    if n > 1:
        out.add(n)
    return out


def _p_part(n, p):
    r = 1
    while n % p == 0:
        n //= p
        r *= p
    return r


def _ilog(n, p):
    k = 0
    while n > 1:
        n //= p
        k += 1
    return k


def reconstruct(s_phases, norm: HalfPowerScalar, t, cap=None) -> ReconstructedTheory:
    """Recover ``(G, q, Omega)`` from ``S = norm * s_phases`` and ``T = diag(t)``.

    The vacuum is the unique row whose phases are all 1; ``|G| = S(0,0)^-2``;
    the group law is read off from products of the characters
    ``chi_u(v) = S(u, v) / S(0, v)``.
    """
    S = s_phases if isinstance(s_phases, PhaseArray) else PhaseArray.from_phases(s_phases)
    T = t if isinstance(t, PhaseArray) else PhaseArray.from_phases(t)
    if len(S.shape) != 2 or S.shape[0] != S.shape[1]:
        raise DimensionMismatch("S must be square")
    m = S.shape[0]
    limits.check(m, limits.EQUIVALENCE_CAP if cap is None else cap, "label set")
    if T.shape != (m,):
        raise DimensionMismatch("T must be a diagonal of the same size as S")

    W = S.numerators
    N = S.modulus
    vac = np.flatnonzero(np.all(W == 0, axis=1))
    if len(vac) == 0:
        raise NoVacuumRow("no row of S is a positive constant")
    if len(vac) > 1:
        raise AmbiguousVacuum(f"rows {vac.tolist()} are all constant")
    vac = int(vac[0])
    if 1 / norm.squared() != m:
        raise DimensionMismatch(f"S(0,0)^-2 = {1 / norm.squared()} but S has {m} rows")

    chars = (W - W[vac]) % (2 * N)
    lookup = {}
    for u in range(m):
        key = chars[u].tobytes()
        if key in lookup:
            raise NotClosed(f"labels {lookup[key]} and {u} carry the same character")
        lookup[key] = u

    add = np.empty((m, m), dtype=np.int64)
    for u in range(m):
        prods = (chars[u][None, :] + chars) % (2 * N)
        for w in range(m):
            z = lookup.get(prods[w].tobytes())
            if z is None:
                raise NotClosed(f"chi_{u} * chi_{w} is not the character of any label")
            add[u, w] = z
    neg = np.empty(m, dtype=np.int64)
    for u in range(m):
        z = lookup.get(((-chars[u]) % (2 * N)).tobytes())
        if z is None:
            raise NotClosed(f"chi_{u} has no inverse among the labels")
        neg[u] = z

    theory = ReconstructedTheory(
        order=m,
        add_table=add,
        neg_table=neg,
        vacuum=vac,
        q_table=T,
        omega_table=PhaseArray(chars, N),
    )
    return theory.validate()


# ----------------------------------------------------------------------------
# fingerprints
# ----------------------------------------------------------------------------


@dataclass(frozen=True)
class Fingerprint:
    invariant_factors: tuple
    q_multiset: tuple  # sorted ((element order, Phase), ...)
    sigma_mod8: int


def _q_multiset(G: DiscGroup, cap=None):
    q = G.q_table(cap)
    pairs = [(G.element_order(e), q[i]) for i, e in enumerate(G.elements(cap))]
    return tuple(sorted(pairs))


def invariant_fingerprint(K, cap=None) -> Fingerprint:
    """Necessary invariants for equivalence; equal fingerprints do not imply it."""
    K = validate_k_matrix(K)
    G = DiscGroup(K)
    return Fingerprint(G.invariant_factors, _q_multiset(G, cap), K.sigma % 8)


# ----------------------------------------------------------------------------
# isomorphism search
# ----------------------------------------------------------------------------


class _DiscTarget:
    def __init__(self, G: DiscGroup):
        self.G = G
        self.order = G.order
        self.zero = 0
        self._q = G.q_table()

    def add(self, a, b):
        G = self.G
        return G.index(G.add(G.element(a), G.element(b)))

    def scale(self, a, k):
        G = self.G
        return G.index(G.scale(G.element(a), k))

    def element_order(self, a):
        return self.G.element_order(self.G.element(a))

    def q(self, a):
        return self._q[a]

    def omega(self, a, b):
        return self.G.bicharacter(self.G.element(a), self.G.element(b))

    def label(self, a):
        return self.G.element(a)


class _TableTarget:
    def __init__(self, theory: ReconstructedTheory):
        self.T = theory
        self.order = theory.order
        self.zero = theory.vacuum
        self._orders = [theory.element_order(a) for a in range(theory.order)]

    def add(self, a, b):
        return self.T.add(a, b)

    def scale(self, a, k):
        out = self.zero
        for _ in range(k):
            out = self.T.add(out, a)
        return out

    def element_order(self, a):
        return self._orders[a]

    def q(self, a):
        return self.T.q(a)

    def omega(self, a, b):
        return self.T.omega(a, b)

    def label(self, a):
        return a


def _wrap(target):
    if isinstance(target, DiscGroup):
        return _DiscTarget(target)
    if isinstance(target, ReconstructedTheory):
        return _TableTarget(target)
    raise TypeError(f"cannot search into {type(target).__name__}")


@dataclass(frozen=True)
class Isomorphism:
    """A q-preserving isomorphism given by the images of the canonical generators.

    ``images[i]`` is the image of the i-th canonical generator of ``source``:
    canonical coordinates when the target is a :class:`DiscGroup`, a label
    index when it is a :class:`ReconstructedTheory`.
    """

    source: DiscGroup
    target: object
    images: tuple
    _image_index: tuple = field(repr=False, compare=False, default=())

    def __call__(self, u):
        t = _wrap(self.target)
        out = t.zero
        for c, img in zip(u, self._image_index):
            out = t.add(out, t.scale(img, c))
        return t.label(out)

    def permutation(self) -> np.ndarray:
        """``p[i]`` is the target index of the image of source element ``i``."""
        t = _wrap(self.target)
        G = self.source
        p = np.empty(G.order, dtype=np.int64)
        for i, u in enumerate(G.elements()):
            out = t.zero
            for c, img in zip(u, self._image_index):
                out = t.add(out, t.scale(img, c))
            p[i] = out
        return p

    @property
    def matrix(self):
        return [list(img) if isinstance(img, tuple) else img for img in self.images]


def find_isomorphism(source: DiscGroup, target, cap=None):
    """First q-preserving isomorphism ``source -> target`` in search order, or None.

    When both sides have the same invariant factors and the identity on
    canonical coordinates preserves q, that map is returned.  Otherwise
    generators are assigned in order of decreasing invariant factor and
    candidate images are scanned in the target's enumeration order.
    """
    cap = limits.EQUIVALENCE_CAP if cap is None else cap
    limits.check(source.order, cap, "equivalence search")
    t = _wrap(target)
    if t.order != source.order:
        return None
    gens = source.generators()
    d = source.invariant_factors
    order_of_search = sorted(range(len(gens)), key=lambda i: (-d[i], i))
    q_src = [source.q_form(g) for g in gens]
    w_src = [[source.bicharacter(a, b) for b in gens] for a in gens]
    by_order = {}
    for a in range(t.order):
        by_order.setdefault(t.element_order(a), []).append(a)

    images = {}
    if isinstance(target, DiscGroup) and target.invariant_factors == d:
        # the identity on canonical coordinates is preferred whenever it is a witness
        ident = [t.G.index(g) for g in gens]
        if all(t.q(ident[i]) == q_src[i] for i in range(len(gens))) and all(
            t.omega(ident[i], ident[j]) == w_src[i][j] for i in range(len(gens)) for j in range(i)
        ):
            images = dict(enumerate(ident))

    def search(pos, span):
        if pos == len(order_of_search):
            return True
        i = order_of_search[pos]
        for cand in by_order.get(d[i], ()):
            if t.q(cand) != q_src[i]:
                continue
            if any(t.omega(cand, images[j]) != w_src[i][j] for j in images):
                continue
            multiples = [t.scale(cand, k) for k in range(d[i])]
            if any(x in span for x in multiples[1:]):
                continue
            images[i] = cand
            new_span = {t.add(s, x) for s in span for x in multiples}
            if search(pos + 1, new_span):
                return True
            del images[i]
        return False

    if not images and not search(0, {t.zero}):
        return None
    image_index = tuple(images[i] for i in range(len(gens)))
    phi = Isomorphism(
        source=source,
        target=target,
        images=tuple(t.label(a) for a in image_index),
        _image_index=image_index,
    )
    _reverify(phi, t)
    return phi


def _reverify(phi: Isomorphism, t):
    """Check bijectivity and q-preservation on every element."""
    p = phi.permutation()
    if len(set(p.tolist())) != phi.source.order:
        raise InternalMismatch("isomorphism witness is not injective")
    q_src = phi.source.q_table()
    for i in range(phi.source.order):
        if t.q(int(p[i])) != q_src[i]:
            raise InternalMismatch("isomorphism witness does not preserve q")


def verify_conjugation(phi: Isomorphism, chunk: int = 256) -> bool:
    """Check ``P S P^-1 = S'`` and ``P T P^-1 = T'`` exactly at genus one.

    Both S matrices carry the same norm ``|G|^(-1/2)`` because the groups have
    equal order, so the check reduces to the phase kernels and twists.
    """
    G = phi.source
    p = phi.permutation()
    q1 = G.q_table()
    target = phi.target
    if isinstance(target, DiscGroup):
        if target.order != G.order:
            return False
        q2 = target.q_table()
    else:
        q2 = target.q_table
    N = _lcm(q1.modulus, q2.modulus)
    if not np.array_equal(q1.lift(N).numerators, q2.lift(N).numerators[p]):
        return False
    if G.rank == 0:
        return True

    X1, A1 = _safe_pair(G.lifts(), _as_array(G.scaled_inverse))
    f1 = N // G.exponent
    if isinstance(target, DiscGroup):
        X2, A2 = _safe_pair(target.lifts()[p], _as_array(target.scaled_inverse))
        f2 = N // target.exponent
    else:
        W2 = target.omega_table.lift(_lcm(N, target.omega_table.modulus))
        N = W2.modulus
        f1 = N // G.exponent
    for start in range(0, G.order, chunk):
        rows = slice(start, start + chunk)
        w1 = (2 * (X1[rows] @ A1 @ X1.T) * f1) % (2 * N)
        if isinstance(target, DiscGroup):
            w2 = (2 * (X2[rows] @ A2 @ X2.T) * f2) % (2 * N)
        else:
            w2 = W2.numerators[p[rows]][:, p]
        if not np.array_equal(np.asarray(w1, dtype=np.int64), np.asarray(w2, dtype=np.int64)):
            return False
    return True


# ----------------------------------------------------------------------------
# equivalence
# ----------------------------------------------------------------------------


GROUP_MISMATCH = "GroupMismatch"
Q_MISMATCH = "QMismatch"
CENTRAL_CHARGE_MISMATCH = "CentralChargeMismatch"


@dataclass(frozen=True)
class EquivalenceResult:
    equivalent: bool
    isomorphism: Isomorphism = None
    reasons: tuple = ()
    sigma_mod8: tuple = (0, 0)

    @property
    def reason(self):
        return self.reasons[0] if self.reasons else None

    def __bool__(self):
        return self.equivalent

    def to_json(self):
        if self.equivalent:
            return {
                "equivalent": True,
                "phi": self.isomorphism.matrix,
                "sigma_mod8": list(self.sigma_mod8),
            }
        return {
            "equivalent": False,
            "reason": self.reason,
            "reasons": list(self.reasons),
            "sigma_mod8": list(self.sigma_mod8),
        }


def measurable_equivalent(K1, K2, cap=None) -> EquivalenceResult:
    """Decide equivalence of two K-matrices at the level of measurable data.

    Reasons are collected in the order: central charge, group, quadratic form.
    A returned witness has been re-verified on every element and shown to
    intertwine the two genus-one (S, T) pairs.
    """
    K1 = validate_k_matrix(K1)
    K2 = validate_k_matrix(K2)
    c = (K1.sigma % 8, K2.sigma % 8)
    G1, G2 = DiscGroup(K1), DiscGroup(K2)
    cap = limits.EQUIVALENCE_CAP if cap is None else cap
    limits.check(max(G1.order, G2.order), cap, "equivalence search")

    reasons = []
    if c[0] != c[1]:
        reasons.append(CENTRAL_CHARGE_MISMATCH)
    if G1.invariant_factors != G2.invariant_factors:
        reasons.append(GROUP_MISMATCH)
    elif _q_multiset(G1, cap) != _q_multiset(G2, cap):
        reasons.append(Q_MISMATCH)

    phi = None
    if GROUP_MISMATCH not in reasons and Q_MISMATCH not in reasons:
        phi = find_isomorphism(G1, G2, cap)
        if phi is None:
            reasons.append(Q_MISMATCH)
        elif not verify_conjugation(phi):
            raise InternalMismatch("q-preserving witness fails to intertwine S and T")
    if reasons:
        return EquivalenceResult(False, None, tuple(reasons), c)
    return EquivalenceResult(True, phi, (), c)
