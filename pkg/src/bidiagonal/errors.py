"""Exception hierarchy shared by every module of the package."""


class BidiagonalError(Exception):
    """Base class for all package errors."""


class DivisionByZero(BidiagonalError, ZeroDivisionError):
    pass


class MissingQ(BidiagonalError):
    """The field context has no value for q."""


class MixedFieldContexts(BidiagonalError):
    pass


class AmbientMismatch(BidiagonalError):
    pass


class NotSquare(BidiagonalError):
    pass


class NotDiagonalizable(BidiagonalError):
    pass


class Unsupported(BidiagonalError):
    """Eigenvalues (or other roots) fall outside the working field."""


class DuplicateEigenvalues(BidiagonalError):
    pass


class DuplicateNodes(BidiagonalError):
    pass


class InconsistentRatios(BidiagonalError):
    pass


class DiameterTooSmall(BidiagonalError):
    pass


class NoSquareRoot(BidiagonalError):
    pass


class FitFailure(BidiagonalError):
    pass


class NotReduced(BidiagonalError):
    pass


class ZeroScale(BidiagonalError):
    pass


class LengthMismatch(BidiagonalError):
    pass


class ClassificationFailed(BidiagonalError):
    def __init__(self, message, verdict=None):
        super().__init__(message)
        self.verdict = verdict


class ShapeInvalid(BidiagonalError):
    pass


class NoInvertibleSolution(BidiagonalError):
    pass


class NotBidiagonal(BidiagonalError):
    """Raised when an operation needs a verified pair but verification failed."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class ParseError(BidiagonalError):
    """Malformed input; ``path`` names the offending JSON location."""

    def __init__(self, message, path="$"):
        super().__init__(f"{path}: {message}")
        self.path = path


class InvariantViolation(BidiagonalError, AssertionError):
    """An identity that must hold for valid inputs failed: an internal contradiction."""
