"""Exception hierarchy.

Two families matter to callers: :class:`ValidationError` for bad inputs
(CLI exit status 1) and :class:`NumericalError` for tolerance breaches
detected while computing (CLI exit status 2).
"""


class QPurifyError(Exception):
    """Base class for all library errors."""


class ValidationError(QPurifyError, ValueError):
    """An input violates a documented invariant or precondition."""


class NumericalError(QPurifyError, ArithmeticError):
    """A computation could not meet its accuracy contract."""


class NotHermitian(ValidationError):
    pass


class NotUnitTrace(ValidationError):
    pass


class NotPositive(ValidationError):
    pass


class NotNormalized(ValidationError):
    pass


class NotPure(ValidationError):
    pass


class DimMismatch(ValidationError):
    pass


class DimFactorMismatch(ValidationError):
    pass


class DegenerateSuperposition(ValidationError):
    """The requested superposition cancels to the zero vector."""


class PhaseCountMismatch(ValidationError):
    pass


class SpectraMismatch(ValidationError):
    pass


class InvalidDirection(ValidationError):
    pass


class GridMismatch(ValidationError):
    pass


class BoundaryLeak(NumericalError):
    """Wavefunction does not decay at the grid edges."""


class GridTooCoarse(NumericalError):
    pass


class SupportClipped(NumericalError):
    """A Radon line leaves the Wigner grid where the function is not negligible."""


class ImaginaryResidue(NumericalError):
    pass
