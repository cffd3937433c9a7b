"""Normalization exponents of toral theories and the closed value on the three-sphere.

Betti numbers are supplied by the caller; nothing here computes topology.
"""

from dataclasses import asdict, dataclass
from fractions import Fraction

from .exactlin import validate_k_matrix
from .modular import HalfPowerScalar


@dataclass(frozen=True)
class BettiData:
    """Real Betti numbers ``h1 = dim H^1(X)``, ``h1_rel = dim H^1(X, dX)`` and likewise in degree 0."""

    h1: int
    h1_rel: int
    h0: int
    h0_rel: int

    def __post_init__(self):
        for name, value in asdict(self).items():
            if value < 0:
                raise ValueError(f"{name} must be nonnegative")

    def __add__(self, other: "BettiData") -> "BettiData":
        """Disjoint union."""
        return BettiData(
            self.h1 + other.h1,
            self.h1_rel + other.h1_rel,
            self.h0 + other.h0,
            self.h0_rel + other.h0_rel,
        )

    @classmethod
    def closed(cls, b1: int) -> "BettiData":
        """Closed connected 3-manifold: Poincare duality gives ``H^1(X, dX) = H^1(X)``."""
        return cls(b1, b1, 1, 1)

    @classmethod
    def handlebody(cls, g: int) -> "BettiData":
        """Genus-g handlebody: ``H^1 = R^g``, ``H^1(X, dX) = H_2(X) = 0``."""
        return cls(g, 0, 1, 0)

    @classmethod
    def cylinder(cls, g: int) -> "BettiData":
        """``Sigma_g x I``, which retracts onto ``Sigma_g``."""
        return cls(2 * g, 1, 1, 0)

    @classmethod
    def from_json(cls, data) -> "BettiData":
        return cls(**{k: int(data[k]) for k in ("h1", "h1_rel", "h0", "h0_rel")})

    def to_json(self):
        return asdict(self)


def m_exponent(b: BettiData) -> Fraction:
    return Fraction(b.h1 + b.h1_rel - b.h0 - b.h0_rel, 4)


def m_closed(b1: int) -> Fraction:
    return Fraction(b1 - 1, 2)


@dataclass(frozen=True)
class GluingData:
    """Dimensions entering the exponent identity for cutting ``X`` along ``Sigma``.

    ``cap`` is ``dim(Lambda_cut meet C)``, the intersection of the boundary
    Lagrangian of the cut manifold with the gluing diagonal.
    """

    x: BettiData
    x_cut: BettiData
    h1_sigma: int
    h1_boundary_cut: int
    cap: int

    def __post_init__(self):
        for name in ("h1_sigma", "h1_boundary_cut", "cap"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be nonnegative")

    def lhs(self) -> Fraction:
        return (
            m_exponent(self.x_cut)
            + Fraction(self.h1_sigma, 4)
            + Fraction(self.cap, 2)
            - Fraction(self.h1_boundary_cut, 4)
        )

    def rhs(self) -> Fraction:
        return m_exponent(self.x)

    @classmethod
    def from_json(cls, data) -> "GluingData":
        return cls(
            x=BettiData.from_json(data["x"]),
            x_cut=BettiData.from_json(data["x_cut"]),
            h1_sigma=int(data["h1_sigma"]),
            h1_boundary_cut=int(data["h1_boundary_cut"]),
            cap=int(data["cap"]),
        )

    def to_json(self):
        return {
            "x": self.x.to_json(),
            "x_cut": self.x_cut.to_json(),
            "h1_sigma": self.h1_sigma,
            "h1_boundary_cut": self.h1_boundary_cut,
            "cap": self.cap,
        }


def exponent_identity_check(d: GluingData) -> bool:
    return d.lhs() == d.rhs()


def mapping_torus_gluing(g: int) -> GluingData:
    """Close ``Sigma_g x I`` up to ``Sigma_g x S^1`` by identifying its two ends.

    The cut boundary is two copies of ``Sigma_g`` and the boundary Lagrangian
    (the restriction of ``H^1`` of the cylinder) is the diagonal, which meets
    the gluing diagonal in a ``2g``-dimensional space.
    """
    return GluingData(
        x=BettiData.closed(2 * g + 1),
        x_cut=BettiData.cylinder(g),
        h1_sigma=2 * g,
        h1_boundary_cut=4 * g,
        cap=2 * g,
    )


def z_s3(K) -> HalfPowerScalar:
    """``Z(S^3) = |det K|^(-1/2)``."""
    K = validate_k_matrix(K)
    return HalfPowerScalar(abs(K.det), -1)
