"""Exact finite quadratic data, modular operators and equivalence tests for K-matrix theories."""

from .classify import (
    EquivalenceResult,
    Fingerprint,
    Isomorphism,
    ReconstructedTheory,
    find_isomorphism,
    invariant_fingerprint,
    measurable_equivalent,
    reconstruct,
    verify_conjugation,
)
from .cyclo import CycloSum, Phase, PhaseArray, approx, cyclotomic_polynomial, is_zero, phase_mul, phase_pow
from .disc import (
    DiscGroup,
    GaussMilgram,
    bicharacter,
    central_charge_mod8,
    discriminant_group,
    enumerate_elements,
    gauss_milgram,
    lift,
    project,
    q_form,
)
from .errors import (
    AmbiguousVacuum,
    CapacityExceeded,
    Degenerate,
    DimensionMismatch,
    InternalMismatch,
    NoVacuumRow,
    NotClosed,
    NotLagrangian,
    NotSymmetric,
    OddDiagonal,
    PolarizationViolation,
    ReconstructionError,
    SingularMatrix,
    ToralError,
)
from .exactlin import (
    KMatrix,
    SignatureTriple,
    SnfDecomposition,
    rational_inverse,
    signature,
    smith_normal_form,
    validate_k_matrix,
)
from .maslov import SymplecticSpace, bks_cocycle_phase, is_lagrangian, kashiwara_index, mu_k
from .modular import (
    HalfPowerScalar,
    ModularData,
    cylinder_factor,
    modular_data,
    s_matrix,
    state_space_dimension,
    t_matrix,
    verify_modular_relations,
    verify_s_unitary,
)
from .tqft import BettiData, GluingData, exponent_identity_check, m_closed, m_exponent, z_s3

__version__ = "0.1.0"
