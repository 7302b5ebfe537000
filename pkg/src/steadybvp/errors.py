"""Exception types shared across the solver stack."""


class SteadyBvpError(Exception):
    """Base class for all solver errors."""


class NonPositiveInflow(SteadyBvpError):
    """Inflow trace must be strictly positive to define a stream coordinate."""


class NotMonotone(SteadyBvpError):
    """Sampled map is not strictly increasing."""


class IncompatibleTraces(SteadyBvpError):
    """Top Bernoulli trace is not the bottom trace composed with the given circle map."""


class MassImbalance(SteadyBvpError):
    """Net flux through the bottom and top boundaries disagrees."""


class NoConvergence(SteadyBvpError):
    """Iteration failed to reach tolerance; data likely outside the small-data regime."""

    def __init__(self, message, iterations=None, final_update=None):
        super().__init__(message)
        self.iterations = iterations
        self.final_update = final_update


class TangencyDetected(SteadyBvpError):
    """Vertical velocity dropped below the tangency guard; characteristics degenerate."""


class MultiValuedPressure(SteadyBvpError):
    """Pressure integrand has a nonzero circulation along the bottom boundary."""


class PathDependence(SteadyBvpError):
    """Pressure integrand is not (discretely) curl-free; line integrals are path dependent."""


class CompatibilityViolated(SteadyBvpError):
    """Full Dirichlet pressure data fails the top-boundary compatibility condition.

    Carries the computed compatibility value so callers can correct the datum.
    """

    def __init__(self, message, lambda_value):
        super().__init__(message)
        self.lambda_value = lambda_value


class InvalidConfig(SteadyBvpError):
    """Malformed or inconsistent configuration input."""


class UnsupportedCase(SteadyBvpError):
    """Requested boundary-value case is not solvable by either implemented method."""
