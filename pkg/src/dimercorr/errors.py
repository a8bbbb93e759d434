"""Exception hierarchy for dimercorr."""


class DimerError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(DimerError, ValueError):
    """Weight t outside the open interval (0, 1)."""


class CriticalPointError(DimerError, ValueError):
    """Weight too close to t = 1/2, where eta_1 and eta_2 merge."""


class SingularSymbolError(DimerError, ValueError):
    """The symbol (or one of its factors) is singular at the requested point."""


class AliasError(DimerError, RuntimeError):
    """Fourier coefficients did not decay on the sampling grid."""


class ConvergenceError(DimerError, RuntimeError):
    """Grid refinement failed to converge within the allowed grid sizes."""


class NegativeDeterminantError(DimerError, ArithmeticError):
    """The FMS determinant came out negative (an indexing bug, not a math fact)."""


class NonPositiveDeterminantError(DimerError, ArithmeticError):
    """det T_n(phi) was not real positive."""


class BranchError(DimerError, RuntimeError):
    """A square-root branch jumped along a sampling contour."""


class DivisionByZeroError(DimerError, ZeroDivisionError):
    """A pivot of the decreasing power algorithm vanished."""


class TruncationError(DimerError, RuntimeError):
    """The truncated Fredholm kernel dropped a non-negligible tail."""


class ToleranceError(DimerError, AssertionError):
    """A numerical identity check failed its tolerance."""
