"""Exception hierarchy shared by every module in the package."""


class QuarticleError(Exception):
    """Base class for all package errors."""


class DomainError(QuarticleError, ValueError):
    """An argument lies outside its admissible range (slot, label, eigenvalue...)."""


class DimensionError(DomainError):
    """The single-particle dimension is too small for the requested construction."""


class ShapeError(QuarticleError, ValueError):
    """Two objects disagree on particle count or single-particle dimension."""


class DegenerateStateError(QuarticleError, ArithmeticError):
    """A ket vanished (or nearly so) where a nonzero state is required."""


class ConditioningOnNullError(QuarticleError, ArithmeticError):
    """The conditioning proposition has (numerically) zero probability."""


class ContractError(QuarticleError):
    """A documented precondition of an operation was not met."""


class InternalConsistencyError(QuarticleError, RuntimeError):
    """A mathematically impossible result was produced; indicates a bug."""


class ParseError(QuarticleError, ValueError):
    """Syntax error in a state expression, with the offending character offset."""

    def __init__(self, message, position):
        super().__init__(f"{message} (at position {position})")
        self.position = position
