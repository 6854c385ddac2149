"""Exception hierarchy shared by every module of the package."""


class DioecyError(Exception):
    """Base class for all package errors."""


class InvalidParams(DioecyError, ValueError):
    pass


class ZeroDenominator(DioecyError, ZeroDivisionError):
    """A division whose denominator is exactly zero.

    ``name`` identifies the offending quantity (for instance ``"c"`` or
    ``"gamma"`` when reducing fitness parameters).
    """

    def __init__(self, message, name=None):
        super().__init__(message)
        self.name = name


class UndefinedImage(DioecyError):
    """The evolution map is 0/0 at the given state.

    ``coordinate`` is ``"x"`` or ``"y"``. When raised from an iteration,
    ``step`` is the index of the state whose image failed and ``states``
    holds the partial orbit up to and including that state.
    """

    def __init__(self, message, coordinate=None, step=None, states=()):
        super().__init__(message)
        self.coordinate = coordinate
        self.step = step
        self.states = tuple(states)


class Overflow(DioecyError, OverflowError):
    """An odds coordinate grew past the divergence threshold."""

    def __init__(self, message, value=None):
        super().__init__(message)
        self.value = value


class BoundaryState(DioecyError, ValueError):
    """A state on the edge x = 1 or y = 1 has no odds coordinates."""


class NotAFixedPoint(DioecyError, ValueError):
    pass


class NotSymmetric(DioecyError, ValueError):
    pass


class BackendMismatch(DioecyError, TypeError):
    pass


class NotApplicable(DioecyError):
    """Operation precondition on a fixed point's type is not met.

    ``classification`` carries the actual stability class (or ``None``).
    """

    def __init__(self, message, classification=None):
        super().__init__(message)
        self.classification = classification
