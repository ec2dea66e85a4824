"""Exception and warning hierarchy for the :mod:`saft` package.

Every error raised deliberately by the library derives from :class:`SaftError`
so callers (and the CLI) can separate validation problems from bugs.
"""


class SaftError(Exception):
    """Base class for all library errors."""


class ValidationError(SaftError, ValueError):
    """Input values violate a documented precondition."""


class DeterminantError(ValidationError):
    """The parameter set violates ``ad - bc = 1``."""


class ZeroBError(ValidationError):
    """The parameter ``b`` vanishes (degenerate, non-integral transform)."""


class GridError(ValidationError):
    """A grid is too small, non-uniform or incompatible with another grid."""


class AlignmentError(ValidationError):
    """A shift or sample location is not aligned with the signal grid."""


class UnsupportedGenerator(ValidationError):
    """The requested generator kind is not known or not supported here."""


class QuadratureError(SaftError, ArithmeticError):
    """A numerical integral failed to reach the requested tolerance."""


class DegenerateError(SaftError, ArithmeticError):
    """The generator system is degenerate for the requested operation."""


class NotReconstructibleError(SaftError, ArithmeticError):
    """The integer-sample symbol vanishes where the generator spectrum does not."""


class ConditionError(ValidationError):
    """A two-sided bound required by a construction is violated."""


class RankError(SaftError, ArithmeticError):
    """A sampling matrix is numerically rank deficient."""


class CountConditionError(ValidationError):
    """Too few sampling points for the requested local reconstruction window."""


class TruncationWarning(UserWarning):
    """A truncated series was cut while its boundary terms were not negligible."""


class ConvergenceWarning(UserWarning):
    """A truncated two-sided series did not reach its tail target."""
