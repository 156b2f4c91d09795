"""Typed exceptions shared by every layer of the library.

All computational operations work inside the multiplicative group of the
field, on distinct elements, within configured size limits.  Violations of
those domain restrictions raise one of the exceptions below instead of
returning sentinel values, so each restriction is individually testable.
"""


class AdelicError(Exception):
    """Base class for all library errors."""


class ZeroElementError(AdelicError):
    """The zero element was passed to an operation defined on nonzero elements."""


class UnknownPlaceError(AdelicError):
    """A place identifier does not denote a place of the given curve."""


class EqualElementsError(AdelicError):
    """Two elements required to be distinct are equal (log 0 is undefined)."""


class NotSolutionsError(AdelicError):
    """A pair check was invoked on elements that do not both solve the system."""


class DegenerateBetaError(AdelicError):
    """The candidate coincides with one of the target elements."""


class NonpositiveDenominatorError(AdelicError):
    """The normalizing quantity log A + h(beta) is not positive."""


class CapacityExceededError(AdelicError):
    """An enumeration or expansion grew past its configured size limit."""


class DegenerateMatrixError(AdelicError):
    """The approximation matrix is too small for the requested check."""


class BadPartitionError(AdelicError):
    """The row partition of the place set is not a partition."""


class NonpositiveLogRhoError(AdelicError):
    """A column weight log(rho_j) required to be positive is not."""


class FiniteHeightBallError(AdelicError):
    """The requested number of elements exceeds the finite height ball."""


class ConfigError(AdelicError):
    """Base class for configuration file problems."""


class ParseError(ConfigError):
    """The configuration file is not well-formed."""


class SchemaError(ConfigError):
    """The configuration file is missing fields or has invalid values."""
