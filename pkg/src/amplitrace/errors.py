"""Exception hierarchy shared by every module.

The CLI maps these onto exit codes, so keep the classes coarse.
"""


class AmplitraceError(Exception):
    """Base class for all package errors."""


class ValidationError(AmplitraceError, ValueError):
    """Input data is malformed or violates a precondition."""


class UnsupportedQuery(ValidationError):
    """The object lacks the data needed to answer the query."""


class ResourceError(AmplitraceError, RuntimeError):
    """An enumeration exceeded its configured cap."""


class ConsistencyError(AmplitraceError, RuntimeError):
    """Two routes that must agree did not (signals a bug)."""


class NumericError(AmplitraceError, RuntimeError):
    """A quadrature or numeric certificate failed to converge."""


class InfeasibleBudget(ValidationError):
    """The exponent constraints admit no positive saving."""
