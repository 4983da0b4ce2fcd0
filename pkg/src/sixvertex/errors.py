"""Exception types shared across the package."""


class SixVertexError(Exception):
    """Base class for all package errors."""


class DegenerateEta(SixVertexError, ValueError):
    pass


class InvalidConvention(SixVertexError, ValueError):
    pass


class IceViolation(SixVertexError, ValueError):
    pass


class SizeTooLarge(SixVertexError, ValueError):
    pass


class DegenerateParameters(SixVertexError, ValueError):
    """A guarded sine factor is too close to zero.

    ``pair`` names the offending parameters, e.g. ``("x1", "x2")``.
    """

    def __init__(self, message, pair=None, value=None):
        super().__init__(message)
        self.pair = pair
        self.value = value


class IllConditioned(SixVertexError, ArithmeticError):
    pass


class RankDeficient(SixVertexError, ArithmeticError):
    pass


class DimensionMismatch(SixVertexError, ValueError):
    pass


class OutOfRange(SixVertexError, ValueError):
    pass


class NearSingular(SixVertexError, ValueError):
    pass


class TableMismatch(SixVertexError, AssertionError):
    """An exact table identity failed; ``cell`` holds the first failing index."""

    def __init__(self, message, cell=None):
        super().__init__(message)
        self.cell = cell


class NonIntegerQuotient(TableMismatch):
    pass
