"""Exception hierarchy shared by all modules.

The CLI maps these onto exit codes: ``ValidationError`` -> 2,
``TheoremViolation`` -> 3.
"""

from __future__ import annotations


class TwistSpaceError(Exception):
    """Base class for all package errors."""


class ValidationError(TwistSpaceError, ValueError):
    """Malformed input. ``offender`` names the offending id when there is one."""

    def __init__(self, message: str, offender=None):
        super().__init__(message)
        self.offender = offender


class DimensionMismatch(ValidationError):
    pass


class NonTrivalent(ValidationError):
    pass


class EdgeReversal(ValidationError):
    pass


class NotInvolution(ValidationError):
    pass


class Disconnected(ValidationError):
    pass


class NotACycle(ValidationError):
    pass


class UnknownLabel(ValidationError):
    pass


class MissingRotation(ValidationError):
    pass


class EmptyRealPart(ValidationError):
    pass


class CapExceeded(ValidationError):
    pass


class PolySyntaxError(ValidationError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}", offender=position)
        self.position = position


class DuplicateMonomial(ValidationError):
    pass


class DegenerateSupport(ValidationError):
    pass


class NotNonSingular(ValidationError):
    pass


class NotTwistAdmissible(ValidationError):
    pass


class TheoremViolation(TwistSpaceError):
    """An invariant that must hold mathematically failed: a bug or a counterexample."""


class CosetViolation(TheoremViolation):
    pass


class ConsistencyError(TheoremViolation):
    """Internal modelling invariant broken (e.g. slot of degree != 2)."""
