"""Exception hierarchy.

Every exception carries a ``reason`` string (the class name) that the
command-line front end reports in its machine-readable error output.
"""


class ToralError(ValueError):
    """Base class for all errors raised by this package."""

    @property
    def reason(self) -> str:
        return type(self).__name__


class SingularMatrix(ToralError):
    pass


class NotSymmetric(ToralError):
    pass


class OddDiagonal(ToralError):
    def __init__(self, index: int, value: int):
        super().__init__(f"diagonal entry {index} is odd ({value})")
        self.index = index
        self.value = value


class Degenerate(ToralError):
    pass


class DimensionMismatch(ToralError):
    pass


class CapacityExceeded(ToralError):
    pass


class NotLagrangian(ToralError):
    pass


class InternalMismatch(RuntimeError):
    """Two independent computations of the same quantity disagree."""

    @property
    def reason(self) -> str:
        return type(self).__name__


class ReconstructionError(ToralError):
    pass


class NoVacuumRow(ReconstructionError):
    pass


class AmbiguousVacuum(ReconstructionError):
    pass


class NotClosed(ReconstructionError):
    pass


class PolarizationViolation(ReconstructionError):
    pass
