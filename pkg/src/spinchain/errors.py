"""Exception hierarchy for the chain simulator."""


class SpinChainError(Exception):
    """Base class for all package errors."""


class InvalidOrder(SpinChainError):
    """Polylogarithm order outside the supported set."""


class SingularPoint(SpinChainError):
    """Phase angle inside the guard radius of the Li_1 divergence."""


class LightLineSingularity(SpinChainError):
    """Momentum kernel evaluated on (or too close to) the light line."""


class DegenerateBands(SpinChainError):
    """Band splitting too small to define a mixing angle."""


class NonPositiveSeparation(SpinChainError):
    """Real-space coupling requested at r <= 0."""


class InvalidParams(SpinChainError):
    """Chain or field parameters violate their invariants."""


class OutOfRangeTime(SpinChainError):
    """Schedule evaluated outside [0, total_duration]."""


class StepTooLarge(SpinChainError):
    """Integrator step violates the stability guard."""


class NonFiniteState(SpinChainError):
    """An amplitude became inf or NaN during integration."""


class EmptyState(SpinChainError):
    """Observables requested for a state with (numerically) zero norm."""


class InsufficientSamples(SpinChainError):
    """Velocity fit window contains too few usable samples."""


class ScheduleMismatch(SpinChainError):
    """Requested integration span exceeds the theta schedule."""


class ParseError(SpinChainError):
    """Config file is not well-formed."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class ValidationError(SpinChainError):
    """Config parsed but a field violates its constraint."""
