"""Exception types raised across the package."""


class QuatpoleError(Exception):
    """Base class for all package-specific errors."""


class ShapeError(QuatpoleError, ValueError):
    """Matrix or vector dimensions do not conform."""


class FormatError(QuatpoleError, ValueError):
    """An input file or inline literal could not be parsed or validated."""


class SingularMatrixError(QuatpoleError):
    """A (near-)singular matrix where an invertible one is required.

    Carries the rank estimated by the elimination that failed.
    """

    def __init__(self, message, estimated_rank=None):
        super().__init__(message)
        self.estimated_rank = estimated_rank


class UncontrollableError(QuatpoleError):
    """The controllability matrix of the pair is rank deficient."""

    def __init__(self, message, rank=None, order=None):
        super().__init__(message)
        self.rank = rank
        self.order = order


class DegreeError(QuatpoleError, ValueError):
    """Polynomial degree does not match what the operation requires."""


class DuplicateClassError(QuatpoleError, ValueError):
    """Two requested roots share a similarity class without being equal."""


class NonRealCoefficientError(QuatpoleError, ValueError):
    """Ackermann-style gains are only valid for real target coefficients."""


class EigenConvergenceError(QuatpoleError, RuntimeError):
    """The QR iteration did not converge within its iteration cap."""

    def __init__(self, message, iterations=None):
        super().__init__(message)
        self.iterations = iterations


class PairingError(QuatpoleError, RuntimeError):
    """Eigenvalues of the complex embedding failed to close under conjugation."""


class DivergenceError(QuatpoleError, RuntimeError):
    """A simulated trajectory produced non-finite state values."""

    def __init__(self, message, step=None):
        super().__init__(message)
        self.step = step
