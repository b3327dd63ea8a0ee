"""Exception types raised across the package."""


class InvalidParameterError(ValueError):
    """Process parameters outside their admissible region."""


class SingularInputError(ValueError):
    """Input makes a linear system singular (e.g. r1**2 == 1)."""


class SingularMatrixError(ValueError):
    """A covariance matrix is singular or not positive definite."""


class InvalidRegressionError(ValueError):
    """The regression function vanishes where it must not."""


class DegenerateDesignError(ValueError):
    """A design (or density) whose normalising quantity is zero."""


class SizeError(ValueError):
    """Too few points for the requested construction."""


class OffGridError(ValueError):
    """A point that is not a member of the candidate grid."""

    def __init__(self, value, message=None):
        self.value = value
        super().__init__(message or f"point {value!r} is not on the grid")
