"""Exception hierarchy and warning categories.

The CLI maps these onto exit codes: validation problems exit 2, numerical
failures exit 3, resource limits exit 4.
"""


class LimitCycleError(Exception):
    """Base class for all package errors."""


class InvalidParameterError(LimitCycleError, ValueError):
    """Bad user input: invalid cutoff, negative rate, cutoff mismatch, ..."""


class UnsupportedRegimeError(LimitCycleError, ValueError):
    """Parameters outside the regime a model or formula is defined for."""


class PrecisionFailureError(LimitCycleError, ArithmeticError):
    """A series did not converge, or cancellation exhausted the precision."""


class IntegrationFailureError(LimitCycleError, ArithmeticError):
    """Time stepping became unstable (trace drift, divergence)."""


class DegenerateSteadyStateError(LimitCycleError, ArithmeticError):
    """The Liouvillian kernel is not one-dimensional."""


class NotApplicableError(LimitCycleError):
    """A diagnostic was requested for a state it is not defined on."""


class ResourceLimitError(LimitCycleError):
    """A requested computation exceeds the configured resource budget."""


class TruncationWarning(UserWarning):
    """The Fock cutoff (or series length) looks inadequate for the state."""


class GridCoverageWarning(UserWarning):
    """A phase-space grid does not fully cover the state."""


class DurationWarning(UserWarning):
    """A correlation series had not decayed by its final time."""
