"""Exception hierarchy shared by every homlie module."""


class HomLieError(Exception):
    """Base class for all errors raised by this package."""


class DimensionMismatchError(HomLieError):
    pass


class SingularMatrixError(HomLieError):
    pass


class DegenerateFormError(HomLieError):
    """A Gram or symplectic matrix with zero determinant."""


class SingularTwistError(HomLieError):
    """The twist map must be invertible for this operation."""


class NonInvolutiveTwistError(HomLieError):
    """The twist map must square to the identity for this operation."""


class NotLeftSymmetricError(HomLieError):
    pass


class NotAdmissibleError(HomLieError):
    pass


class OddDimensionError(HomLieError):
    """Almost complex structures only exist in even dimension."""


class NoComplexStructureError(HomLieError):
    pass


class InvalidStructureError(HomLieError):
    """An input violates a documented precondition.

    Carries the offending ``Violation`` when one is available.
    """

    def __init__(self, message, violation=None):
        super().__init__(message)
        self.violation = violation
