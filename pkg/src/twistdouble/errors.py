"""Exception hierarchy shared by all twistdouble modules."""


class TwistDoubleError(Exception):
    """Base class for every error raised by this package."""


class FieldMismatch(TwistDoubleError, TypeError):
    """Arithmetic attempted between scalars of different fields."""


class DivisionByZero(TwistDoubleError, ZeroDivisionError):
    """Division or inversion of a zero scalar."""


class FieldLacksRoot(TwistDoubleError, ValueError):
    """The coefficient field has no primitive root of unity of the required order."""


class DimensionMismatch(TwistDoubleError, ValueError):
    """Tensor operands with incompatible dimensions or leg counts."""


class IndexOutOfRange(TwistDoubleError, IndexError):
    """Leg positions or basis indices outside the valid range."""


class SolveInconsistent(TwistDoubleError, ValueError):
    """Exact linear solve with no solution."""


class NotConvolutionInvertible(TwistDoubleError, ValueError):
    """The convolution-inverse linear system is singular."""


class NotInvertible(TwistDoubleError, ValueError):
    """An algebra element with no two-sided inverse."""


class InvalidGroupTable(TwistDoubleError, ValueError):
    """A multiplication table that is not a group."""


class NoIntegral(TwistDoubleError, ValueError):
    """Integral solution space is zero-dimensional (corrupted input)."""


class AmbiguousIntegral(TwistDoubleError, ValueError):
    """Integral solution space has dimension greater than one."""


class NormalizationImpossible(TwistDoubleError, ValueError):
    """A required normalization pairing evaluates to zero."""


class NotDefined(TwistDoubleError, ValueError):
    """Modular function undefined: t*h is not proportional to t."""


class UnsupportedInput(TwistDoubleError, ValueError):
    """Operation not available for this kind of input."""


class TwistPropertyFailed(TwistDoubleError, ValueError):
    """Constructed twist does not satisfy its defining property (construction bug guard)."""


class CocycleConditionFailed(TwistDoubleError, ValueError):
    """A 2-cocycle precondition of the crossed product fails."""


class NotAssociative(TwistDoubleError, ValueError):
    """Crossed-product associativity sweep failed (guard)."""


class CointegralZero(TwistDoubleError, ValueError):
    """Weighted integral vanished; fatal inconsistency in the input data."""


class CrossCheckFailed(TwistDoubleError, ValueError):
    """Two independent computation paths of the same element disagree."""


class NotRibbonCandidate(TwistDoubleError, ValueError):
    """Candidate fails a membership condition for the ribbon correspondence."""

    def __init__(self, condition: str, message: str = ""):
        self.condition = condition
        super().__init__(message or f"candidate fails condition: {condition}")


class VerificationFailed(TwistDoubleError):
    """A mandatory verification sweep failed; carries the offending report."""

    def __init__(self, report, message: str = "verification sweep failed"):
        self.report = report
        super().__init__(message)


class SpecError(TwistDoubleError, ValueError):
    """Malformed or inconsistent session specification."""
