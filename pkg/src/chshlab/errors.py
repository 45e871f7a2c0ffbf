"""Semantic exception hierarchy shared by all chshlab modules."""


class ChshLabError(Exception):
    """Base class for every error raised by this package."""


class InvalidInputError(ChshLabError, ValueError):
    """An argument violates its contract (domain, alphabet, finiteness)."""


class InconsistentSystemError(ChshLabError):
    """The marginal-constraint system admits no solution for the given vector."""


class UndefinedEstimateError(ChshLabError, ZeroDivisionError):
    """A sample estimator has a zero denominator (no events on that route)."""
