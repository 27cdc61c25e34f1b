"""Exception hierarchy shared by every jordanpers module."""


class JordanPersError(Exception):
    """Base class for all errors raised by jordanpers."""


class ShapeMismatch(JordanPersError, ValueError):
    pass


class SingularMatrix(JordanPersError, ValueError):
    pass


class NonIntegralSolution(JordanPersError, ValueError):
    pass


class NegativeMultiplicity(JordanPersError, ValueError):
    pass


class UnknownElement(JordanPersError, KeyError):
    pass


class OverlappingSlices(JordanPersError, ValueError):
    pass


class RangeError(JordanPersError, ValueError):
    pass


class NotComparable(JordanPersError, ValueError):
    pass


class PosetMismatch(JordanPersError, ValueError):
    pass


class NegativeShift(JordanPersError, ValueError):
    pass


class InvalidCertificate(JordanPersError, ValueError):
    pass


class DimensionMismatch(JordanPersError, ValueError):
    pass


class SchemaError(JordanPersError, ValueError):
    """Malformed input file; ``context`` names the offending field."""

    def __init__(self, message, context=None):
        self.context = context
        if context:
            message = f"{context}: {message}"
        super().__init__(message)
