"""Exception and warning types shared across the package."""


class VCavityError(Exception):
    """Base class for errors raised by this package."""


class SingularMatrixError(VCavityError):
    """Linear system is rank deficient or unsolvable at the requested tolerance."""


class NoKernelError(VCavityError):
    """Matrix has no numerical null space where exactly one was required."""


class DegenerateKernelError(VCavityError):
    """Numerical null space has dimension greater than one."""


class ToleranceNotMetError(VCavityError):
    """Adaptive quadrature hit its refinement limit before reaching tolerance."""


class DegenerateDressingError(VCavityError):
    """Dressed-state structure is undefined (zero generalized Rabi frequency)."""


class DimensionTooLargeError(VCavityError):
    """Requested Hilbert-space truncation exceeds the supported cap."""


class NonPositiveStateError(VCavityError):
    """Computed steady state has a significantly negative eigenvalue."""


class SingularRateMatrixError(VCavityError):
    """Rate-equation steady state is undefined (vanishing denominator)."""


class ResolventSingularError(VCavityError):
    """Resolvent solve failed even after nudging the frequency off the spectrum."""


class ConfigError(VCavityError):
    """Run configuration could not be parsed or validated."""


class IllConditionedWarning(UserWarning):
    """Linear solve proceeded on a matrix with condition estimate above the cap."""


class BadCavityWarning(UserWarning):
    """Parameters sit outside the overdamped-cavity regime the model assumes."""


class SecularValidityWarning(UserWarning):
    """Dressed-level splitting is not large compared to the relaxation rates."""
