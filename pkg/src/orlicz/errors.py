"""Exception types shared across the library."""


class OrliczError(Exception):
    """Base class for all library-specific errors."""


class NonEvaluable(OrliczError):
    """Integrand returned NaN, infinity, or a negative value at a sample point."""


class BudgetExceeded(OrliczError):
    """Subdivision or ladder budget exhausted before reaching a verdict."""

    def __init__(self, message, trace=None):
        super().__init__(message)
        self.trace = trace


class Inconclusive(OrliczError):
    """Divergence classification could not be settled (slope oscillation)."""

    def __init__(self, message, trace=None):
        super().__init__(message)
        self.trace = trace


class NoSignChange(OrliczError, ValueError):
    """Root bracket endpoints have the same sign."""


class NonConvergence(OrliczError):
    """Iteration cap reached without meeting the requested tolerance."""


class BadParameter(OrliczError, ValueError):
    """Parameter outside the admissible range for a builtin family."""


class BadAlpha(BadParameter):
    """Series or quadrature argument outside alpha < 1."""


class MassOverflow(OrliczError, ValueError):
    """Step pieces carry more mass than the declared total."""


class NotDominated(OrliczError, ValueError):
    """Pointwise tail domination precondition fails."""


class DivergentModular(OrliczError):
    """Embedding constant requested for a non-coincident configuration."""


class DescriptorError(OrliczError, ValueError):
    """Malformed function descriptor."""
