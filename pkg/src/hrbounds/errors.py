"""Exception hierarchy shared across the package.

Every error raised by the library derives from :class:`HRBoundsError`, so
callers (and the CLI) can catch one base class and still tell the failure
modes apart.
"""

from __future__ import annotations


class HRBoundsError(Exception):
    """Base class for all errors raised by this package."""


class ParameterDomainError(HRBoundsError, ValueError):
    """A distribution or functional parameter is outside its domain.

    Carries the name of the offending field in ``field``.
    """

    def __init__(self, field: str, message: str):
        self.field = field
        super().__init__(f"{field}: {message}")


class DataError(HRBoundsError, ValueError):
    """Input data is malformed (non-finite entries, wrong shape).

    ``index`` points at the first offending entry when known.
    """

    def __init__(self, message: str, index: int | None = None):
        self.index = index
        if index is not None:
            message = f"{message} (index {index})"
        super().__init__(message)


class ValidationError(HRBoundsError, ValueError):
    """A domain object violates one of its declared invariants."""


class HypothesisViolationError(HRBoundsError):
    """Bound inputs violate a hypothesis the inequality requires.

    ``failing_indices`` lists the sequence positions where the hypothesis
    fails, when that is meaningful.
    """

    def __init__(self, message: str, failing_indices: list[int] | None = None):
        self.failing_indices = failing_indices or []
        if self.failing_indices:
            message = f"{message} (failing k: {self.failing_indices})"
        super().__init__(message)


class NonIntegrabilityError(HRBoundsError):
    """Requested moments are infinite or their estimates never stabilize."""


class AnalyticProfileUnavailable(HRBoundsError):
    """No closed-form moment table exists for this family/shape combination."""


class CertificateError(HRBoundsError):
    """Internal consistency failure: a numeric certificate contradicts the
    claimed analytic constant."""


class EnumerationSizeError(HRBoundsError, ValueError):
    """Exact enumeration would exceed the supported state-space size."""


class DigestMismatchError(HRBoundsError):
    """A bound report and an estimate describe different events and cannot
    be compared."""
