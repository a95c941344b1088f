"""Exception types shared across the package."""


class ConfigError(ValueError):
    """A sweep configuration is malformed or semantically invalid.

    Carries the offending key so the CLI can point at it.
    """

    def __init__(self, message, key=None):
        super().__init__(message)
        self.key = key


class HorizonError(ValueError):
    """The emission event lies on or beyond the receiver's causal horizon.

    Raised when the null invariant x + t is not positive: the pulse
    never crosses into the right Rindler wedge, so reception time,
    gain and key rate are all undefined.
    """


class NonConvergenceError(RuntimeError):
    """A quadrature failed to reach its tolerance.

    ``estimate`` holds the best value obtained, ``error`` the
    a-posteriori error estimate that exceeded the budget.
    """

    def __init__(self, message, estimate=None, error=None):
        super().__init__(message)
        self.estimate = estimate
        self.error = error


class DiscretizationError(RuntimeError):
    """The discretized mode integrals violate an exact inequality.

    Signals an unusable grid (for instance the particle-conserving
    integral not exceeding the particle-creating one), not physics.
    """
