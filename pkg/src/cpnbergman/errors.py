"""Exception types shared across the package."""


class ComputationError(Exception):
    """Base class for failures inside a numerical or exact computation."""


class QuadratureError(ComputationError):
    """Adaptive quadrature exhausted its budget before reaching tolerance."""


class PositivityError(ComputationError):
    """A quantity that must be positive (metric form, section norm) is not."""


class PoleError(ComputationError):
    """Evaluation lands exactly on a resonant pole."""


class DerivativeUnavailableError(ComputationError):
    """A metric profile does not supply derivatives of the requested order."""


class StepUnderflowError(ComputationError):
    """Finite-difference step too small for the working precision."""


class SingularMatrixError(ComputationError):
    """A matrix required to be invertible is numerically rank deficient."""


class UnsupportedDimensionError(ComputationError):
    """Operation is only implemented for specific dimensions."""


class InsufficientSamplesError(ComputationError):
    """Too few samples for the requested fit order."""


class NonConvergenceError(ComputationError):
    """An iteration exceeded its budget without converging.

    Carries the partial iteration state when available so callers can
    inspect or report the trace.
    """

    def __init__(self, message, state=None):
        super().__init__(message)
        self.state = state


class DivergenceError(NonConvergenceError):
    """An iteration produced growing steps and was aborted."""
