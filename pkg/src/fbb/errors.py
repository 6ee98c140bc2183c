"""Exception types shared across the toolkit."""


class FBBError(Exception):
    """Base class for all toolkit errors."""


class RangeError(FBBError, ValueError):
    """An integer argument lies outside the supported range."""


class DomainError(FBBError, ValueError):
    """A point lies outside the domain of a function (pole, branch cut, region)."""


class ArityError(FBBError, ValueError):
    """A sequence is too short for the requested order."""


class NumericError(FBBError, ArithmeticError):
    """An iterative method failed or produced a non-finite value."""


class BracketError(NumericError):
    """A root bracket does not contain a sign change."""
