class SpinxError(ValueError):
    """Base class for invalid inputs to spinx operations."""


class InvalidSpace(SpinxError):
    pass


class DimensionMismatch(SpinxError):
    pass


class InvalidElement(SpinxError):
    """Raised for vectors or elements with the wrong shape or non-finite entries."""


class UnsupportedSpace(SpinxError):
    """Raised when an operation needs an inner product the space does not have."""


class InvalidGrid(SpinxError):
    pass


class NotInCone(SpinxError):
    pass


class NotPositive(SpinxError):
    pass


class NotOrthogonal(SpinxError):
    pass


class ZeroElement(SpinxError):
    pass


class FrameMismatch(SpinxError):
    """Raised when two subalgebra elements are built on different frames."""


class NotPerpendicular(SpinxError):
    """Raised when a frame pair fails the 2-orthogonality certificate."""


class InconsistentWithTheorem(SpinxError, RuntimeError):
    """
    A zero product whose side conditions disagree with the zero-product characterization.
    This signals a tolerance or implementation bug rather than bad input.
    """
