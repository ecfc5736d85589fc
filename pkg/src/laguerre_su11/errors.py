"""Exception and warning types shared across the package."""


class PoleError(ValueError):
    """Raised when a function is evaluated at one of its poles."""


class BranchCutError(ValueError):
    """Raised when an argument lies on a branch cut."""


class DomainError(ValueError):
    """Raised for arguments outside the documented domain."""


class RegimeError(ValueError):
    """Raised for parameters outside the supported (absolutely continuous) regime."""


class UnknownSuiteError(KeyError):
    """Raised by the verification harness for an unregistered suite name."""


class NonConvergenceError(RuntimeError):
    """Raised when an iterative scheme fails to reach its tolerance.

    Attributes
    ----------
    estimate : complex or ndarray
        Best value obtained before giving up.
    error : float
        Error estimate attached to `estimate`.
    """

    def __init__(self, message, estimate=None, error=None):
        super().__init__(message)
        self.estimate = estimate
        self.error = error


class LimitRegimeWarning(UserWarning):
    """Issued when rho is so small that integer-b limit schemes are in use."""


class TruncationWarning(UserWarning):
    """Issued when a truncated integral has a tail above tolerance."""


class SpecError(ValueError):
    """Raised for invalid sweep parameters (unknown grid key, empty grid, bad tolerance)."""
