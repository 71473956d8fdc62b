"""Exception types shared across the package."""


class DiamondError(Exception):
    """Base class for all package-specific errors."""


class SingularPoint(DiamondError):
    """The conformal map sends this point to infinity (denominator ~ 0)."""


class OnHorizon(DiamondError):
    """Point lies on a diamond horizon line where (eta, xi) diverge."""


class UnsupportedRegion(DiamondError):
    """Operation is not defined for points in this region of the atlas."""


class DomainCap(DiamondError):
    """Argument magnitude exceeds the validated domain of the algorithm."""


class NonConvergence(DiamondError):
    """Iteration failed to reach the requested tolerance within budget.

    Carries the best estimate obtained and the error bound at the point the
    budget ran out.
    """

    def __init__(self, message, best_estimate=None, error_bound=None):
        super().__init__(message)
        self.best_estimate = best_estimate
        self.error_bound = error_bound


class TruncationTooSmall(DiamondError):
    """Fock-space truncation leaves a tail above the requested tolerance."""


class OutOfSupport(DiamondError):
    """Mode evaluated outside its support region in strict mode."""
