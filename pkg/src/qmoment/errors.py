"""Exception types used across the solver."""


class MomentError(Exception):
    """Base class for all solver errors."""


class InputError(MomentError):
    """Malformed or incomplete input (missing moments, bad degrees, bad files)."""


class NotPositiveDefiniteError(MomentError):
    """The 6x6 moment matrix is singular or not positive semidefinite."""


class UnsupportedConicError(MomentError):
    """The extracted column relation is a degenerate conic the solver does not handle."""


class ExtensionInfeasibleError(MomentError):
    """A block extension violates the range condition of the singular base matrix."""


class NumericalFailureError(MomentError):
    """A numerical invariant failed beyond tolerance; carries the case trace if available."""

    def __init__(self, message, trace=None):
        super().__init__(message)
        self.trace = trace
