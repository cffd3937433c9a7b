"""Exact roots of unity and integer sums of roots of unity.

A :class:`Phase` is ``exp(i*pi*e)`` for a rational exponent ``e`` kept
modulo 2.  A :class:`CycloSum` is a finite integer combination of powers of
``zeta = exp(i*pi/N)``; :func:`is_zero` decides exactly whether it vanishes by
reducing modulo the cyclotomic polynomial of order ``2N``.
"""

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from . import limits

# ----------------------------------------------------------------------------
# cyclotomic polynomials
# ----------------------------------------------------------------------------


def _poly_divexact(num, den):
    """Exact quotient of integer polynomials (ascending coefficients), den monic."""
    num = list(num)
    dd = len(den) - 1
    q = [0] * (len(num) - dd)
    for i in range(len(q) - 1, -1, -1):
        c = num[i + dd]
        q[i] = c
        if c:
            for j, b in enumerate(den):
                num[i + j] -= c * b
    if any(num[:dd]):
        raise ArithmeticError("polynomial division is not exact")
    return q


def _poly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple:
    """Coefficients (ascending) of the n-th cyclotomic polynomial."""
    if n < 1:
        raise ValueError("n must be positive")
    limits.check(n, 2 * limits.CYCLOTOMIC_CAP, "cyclotomic order")
    if n == 1:
        return (-1, 1)
    num = [-1] + [0] * (n - 1) + [1]
    den = [1]
    for d in range(1, n):
        if n % d == 0:
            den = _poly_mul(den, cyclotomic_polynomial(d))
    return tuple(_poly_divexact(num, den))


def euler_phi(n: int) -> int:
    result = n
    p = 2
    m = n
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


# ----------------------------------------------------------------------------
# Phase
# ----------------------------------------------------------------------------


@dataclass(frozen=True, order=True)
class Phase:
    """The unit complex number ``exp(i*pi*exponent)``, exponent in [0, 2)."""

    exponent: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "exponent", Fraction(self.exponent) % 2)

    @classmethod
    def from_string(cls, s: str) -> "Phase":
        return cls(Fraction(s.strip()))

    @classmethod
    def turns(cls, t) -> "Phase":
        """``exp(2*pi*i*t)``."""
        return cls(2 * Fraction(t))

    def __str__(self):
        e = self.exponent
        return f"{e.numerator}/{e.denominator}"

    def __mul__(self, other):
        if not isinstance(other, Phase):
            return NotImplemented
        return Phase(self.exponent + other.exponent)

    def __truediv__(self, other):
        if not isinstance(other, Phase):
            return NotImplemented
        return Phase(self.exponent - other.exponent)

    def __pow__(self, k: int):
        return Phase(self.exponent * k)

    def conjugate(self) -> "Phase":
        return Phase(-self.exponent)

    @property
    def order(self) -> int:
        """Multiplicative order as a root of unity."""
        return (self.exponent / 2).denominator

    @property
    def is_one(self) -> bool:
        return self.exponent == 0

    def to_complex(self) -> complex:
        return cmath.exp(1j * math.pi * float(self.exponent))


def phase_mul(a: Phase, b: Phase) -> Phase:
    return a * b


def phase_pow(a: Phase, k: int) -> Phase:
    return a**k


ONE = Phase(0)


# ----------------------------------------------------------------------------
# CycloSum
# ----------------------------------------------------------------------------


def _lcm(a, b):
    return a * b // math.gcd(a, b)


@dataclass(frozen=True)
class CycloSum:
    """``sum(c * zeta**k)`` with ``zeta = exp(i*pi/modulus)`` and k mod 2*modulus.

    Equality is value equality (decided exactly), so instances are unhashable.
    """

    modulus: int
    terms: tuple  # sorted ((k, c), ...) with c != 0

    __hash__ = None

    @classmethod
    def from_dict(cls, modulus: int, coeffs) -> "CycloSum":
        if modulus < 1:
            raise ValueError("modulus must be positive")
        limits.check(modulus, limits.CYCLOTOMIC_CAP, "cyclotomic modulus")
        m = 2 * modulus
        acc = {}
        for k, c in coeffs.items():
            k = int(k) % m
            acc[k] = acc.get(k, 0) + int(c)
        return cls(modulus, tuple(sorted((k, c) for k, c in acc.items() if c)))

    @classmethod
    def from_int(cls, n: int) -> "CycloSum":
        return cls.from_dict(1, {0: n})

    @classmethod
    def from_phases(cls, phases, coeffs=None) -> "CycloSum":
        phases = list(phases)
        if coeffs is None:
            coeffs = [1] * len(phases)
        N = 1
        for p in phases:
            N = _lcm(N, p.exponent.denominator)
        acc = {}
        for p, c in zip(phases, coeffs):
            k = p.exponent.numerator * (N // p.exponent.denominator)
            acc[k] = acc.get(k, 0) + c
        return cls.from_dict(N, acc)

    @classmethod
    def from_counts(cls, modulus: int, counts) -> "CycloSum":
        """Build from a length-``2*modulus`` coefficient vector."""
        return cls.from_dict(modulus, {k: int(c) for k, c in enumerate(counts) if c})

    def as_dict(self):
        return dict(self.terms)

    def lift(self, modulus: int) -> "CycloSum":
        if modulus % self.modulus:
            raise ValueError(f"{modulus} is not a multiple of {self.modulus}")
        f = modulus // self.modulus
        return CycloSum.from_dict(modulus, {k * f: c for k, c in self.terms})

    def _common(self, other):
        N = _lcm(self.modulus, other.modulus)
        return self.lift(N), other.lift(N)

    def __add__(self, other):
        if isinstance(other, int):
            other = CycloSum.from_int(other)
        if not isinstance(other, CycloSum):
            return NotImplemented
        a, b = self._common(other)
        acc = a.as_dict()
        for k, c in b.terms:
            acc[k] = acc.get(k, 0) + c
        return CycloSum.from_dict(a.modulus, acc)

    __radd__ = __add__

    def __neg__(self):
        return CycloSum(self.modulus, tuple((k, -c) for k, c in self.terms))

    def __sub__(self, other):
        if isinstance(other, int):
            other = CycloSum.from_int(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return CycloSum.from_dict(self.modulus, {k: c * other for k, c in self.terms})
        if isinstance(other, Phase):
            other = CycloSum.from_phases([other])
        if not isinstance(other, CycloSum):
            return NotImplemented
        a, b = self._common(other)
        acc = {}
        for k1, c1 in a.terms:
            for k2, c2 in b.terms:
                k = k1 + k2
                acc[k] = acc.get(k, 0) + c1 * c2
        return CycloSum.from_dict(a.modulus, acc)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = CycloSum.from_int(1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Phase)):
            other = CycloSum.from_int(other) if isinstance(other, int) else CycloSum.from_phases([other])
        if not isinstance(other, CycloSum):
            return NotImplemented
        return is_zero(self - other)

    def is_zero(self) -> bool:
        return is_zero(self)

    def approx(self) -> complex:
        return approx(self)


def _reduce_mod_cyclotomic(coeffs: dict, order: int) -> dict:
    """Remainder of ``sum c x^k`` modulo the cyclotomic polynomial of ``order``."""
    phi = cyclotomic_polynomial(order)
    deg = len(phi) - 1
    low = [(j, b) for j, b in enumerate(phi[:-1]) if b]
    rem = dict(coeffs)
    if not rem:
        return rem
    # each step only writes below ``top``, so one descending sweep suffices
    for top in range(max(rem), deg - 1, -1):
        c = rem.pop(top, 0)
        if not c:
            continue
        shift = top - deg
        for j, b in low:
            k = shift + j
            v = rem.get(k, 0) - c * b
            if v:
                rem[k] = v
            else:
                rem.pop(k, None)
    return rem


def is_zero(s: CycloSum) -> bool:
    """Exact test that ``s`` is the complex number zero."""
    if not s.terms:
        return True
    return not _reduce_mod_cyclotomic(s.as_dict(), 2 * s.modulus)


def approx(s: CycloSum) -> complex:
    """Floating-point value of ``s`` (compensated summation per component)."""
    m = 2 * s.modulus
    re = math.fsum(c * math.cos(2 * math.pi * k / m) for k, c in s.terms)
    im = math.fsum(c * math.sin(2 * math.pi * k / m) for k, c in s.terms)
    return complex(re, im)


# ----------------------------------------------------------------------------
# batched zero tests
# ----------------------------------------------------------------------------


@lru_cache(maxsize=64)
def reduction_matrix(modulus: int) -> np.ndarray:
    """Row k holds the coefficients of ``x^k mod Phi_{2N}`` (k < 2N).

    Returned as an object array when entries would not fit comfortably in int64.
    """
    m = 2 * modulus
    phi = cyclotomic_polynomial(m)
    deg = len(phi) - 1
    rows = []
    cur = [0] * deg
    cur[0] = 1
    for _ in range(m):
        rows.append(cur)
        lead = cur[-1]
        nxt = [0] + cur[:-1]
        if lead:
            nxt = [a - lead * b for a, b in zip(nxt, phi[:-1])]
        cur = nxt
    biggest = max(abs(a) for r in rows for a in r)
    dtype = np.int64 if biggest < 2**31 else object
    out = np.array(rows, dtype=dtype)
    out.setflags(write=False)
    return out


def vanishing_rows(counts, modulus: int) -> np.ndarray:
    """Exact zero test for many sums at once.

    ``counts[..., k]`` is the integer coefficient of ``zeta**k`` with
    ``zeta = exp(i*pi/modulus)``; the last axis has length ``2*modulus``.
    Returns a boolean array over the leading axes.
    """
    counts = np.asarray(counts)
    R = reduction_matrix(modulus)
    bound = int(np.abs(counts).sum(axis=-1).max(initial=0)) if counts.size else 0
    rmax = int(np.abs(R).max(initial=0))
    if R.dtype == object or bound * max(rmax, 1) >= 2**62:
        reduced = counts.astype(object) @ R.astype(object)
    else:
        reduced = counts.astype(np.int64) @ R
    return np.all(reduced == 0, axis=-1)


def exponent_histogram(exponents, modulus: int) -> np.ndarray:
    """Histogram of integer exponents (mod 2N) along the last axis."""
    e = np.asarray(exponents, dtype=np.int64) % (2 * modulus)
    lead = e.shape[:-1]
    flat = e.reshape(-1, e.shape[-1]) if e.ndim > 1 else e.reshape(1, -1)
    m = 2 * modulus
    offsets = (np.arange(flat.shape[0]) * m)[:, None]
    hist = np.bincount((flat + offsets).ravel(), minlength=flat.shape[0] * m)
    return hist.reshape(lead + (m,)) if e.ndim > 1 else hist.reshape(m)


# ----------------------------------------------------------------------------
# arrays of phases over a common denominator
# ----------------------------------------------------------------------------


class PhaseArray:
    """An ndarray of phases ``exp(i*pi*k/modulus)`` stored as integers k mod 2N."""

    def __init__(self, numerators, modulus: int):
        self.modulus = int(modulus)
        self.numerators = np.asarray(numerators, dtype=np.int64) % (2 * self.modulus)
        self.numerators.setflags(write=False)

    @classmethod
    def from_phases(cls, phases) -> "PhaseArray":
        arr = np.asarray(phases, dtype=object)
        N = 1
        for p in arr.flat:
            N = _lcm(N, p.exponent.denominator)
        nums = np.zeros(arr.shape, dtype=np.int64)
        for idx, p in np.ndenumerate(arr):
            nums[idx] = p.exponent.numerator * (N // p.exponent.denominator)
        return cls(nums, N)

    @classmethod
    def from_strings(cls, strings) -> "PhaseArray":
        arr = np.asarray(strings, dtype=object)
        phases = np.empty(arr.shape, dtype=object)
        for idx, s in np.ndenumerate(arr):
            phases[idx] = Phase.from_string(str(s))
        return cls.from_phases(phases)

    @property
    def shape(self):
        return self.numerators.shape

    def __len__(self):
        return len(self.numerators)

    def phase(self, *idx) -> Phase:
        return Phase(Fraction(int(self.numerators[idx]), self.modulus))

    def __getitem__(self, idx):
        sub = self.numerators[idx]
        if np.ndim(sub) == 0:
            return Phase(Fraction(int(sub), self.modulus))
        return PhaseArray(sub, self.modulus)

    def lift(self, modulus: int) -> "PhaseArray":
        if modulus % self.modulus:
            raise ValueError(f"{modulus} is not a multiple of {self.modulus}")
        return PhaseArray(self.numerators * (modulus // self.modulus), modulus)

    def reduced(self) -> "PhaseArray":
        """Same phases over the smallest possible modulus."""
        g = math.gcd(int(np.gcd.reduce(self.numerators, axis=None, initial=0)), self.modulus)
        if g <= 1:
            return self
        return PhaseArray(self.numerators // g, self.modulus // g)

    def conjugate(self) -> "PhaseArray":
        return PhaseArray(-self.numerators, self.modulus)

    def same_phases(self, other: "PhaseArray") -> bool:
        if self.shape != other.shape:
            return False
        N = _lcm(self.modulus, other.modulus)
        return bool(np.array_equal(self.lift(N).numerators, other.lift(N).numerators))

    def to_strings(self):
        def fmt(k):
            f = Fraction(int(k), self.modulus)
            return f"{f.numerator}/{f.denominator}"

        return np.vectorize(fmt, otypes=[object])(self.numerators).tolist() if self.numerators.size else (
            self.numerators.tolist()
        )

    def to_complex(self) -> np.ndarray:
        return np.exp(1j * np.pi * self.numerators / self.modulus)

    def __repr__(self):
        return f"PhaseArray(shape={self.shape}, modulus={self.modulus})"
