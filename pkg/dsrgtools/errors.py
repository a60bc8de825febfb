"""Exceptions raised by dsrgtools.

Results such as NotDSRG or FeasibilityReport are returned, not raised. The
classes below cover invalid input, broken preconditions and theorem
violations, the latter deriving from AssertionError.
"""


class DSRGError(Exception):
    """Base class of all dsrgtools errors."""


class NotApplicableError(DSRGError):
    pass


class OutOfRangeError(DSRGError, ValueError):
    pass


class InfeasibleError(DSRGError, ValueError):
    pass


class PreconditionError(DSRGError, ValueError):
    """A graph or tuple does not satisfy the hypothesis of an operation."""


class BadParamsError(PreconditionError):
    """Invalid construction parameters."""


class MissingBaseError(BadParamsError):
    pass


class IntegerOverflowError(DSRGError, OverflowError):
    pass


class InvalidActionError(DSRGError, ValueError):
    pass


class NotCoprimeError(DSRGError, ValueError):
    pass


class NotAutomorphismError(DSRGError, ValueError):
    pass


class NotSubgroupError(DSRGError, ValueError):
    pass


class IdentityInSError(DSRGError, ValueError):
    pass


class GroupMismatchError(DSRGError, ValueError):
    pass


class LoopError(DSRGError, ValueError):
    """The identity lies in HSH, so the coset graph would carry loops."""


class QOrbitError(BadParamsError):
    pass


class NonIntegerSpectrumError(DSRGError, ValueError):
    pass


class TooLargeError(DSRGError, ValueError):
    pass


class FormatError(DSRGError, ValueError):
    """A graph or catalog file could not be parsed."""


class VerificationMismatch(DSRGError, AssertionError):
    """A built graph does not verify as the tuple its formula predicts."""


class BoundViolation(DSRGError, AssertionError):
    pass


class FactViolation(DSRGError, AssertionError):
    pass


class QuotientError(FactViolation):
    pass
