"""Exception hierarchy shared by every module of the package."""


class IncidenceError(Exception):
    """Base class; the CLI reports ``type(exc).__name__`` to the user."""


class ParseError(IncidenceError, ValueError):
    pass


class NonPrimeModulus(IncidenceError, ValueError):
    pass


class RingMismatch(IncidenceError, ValueError):
    pass


class PreorderMismatch(IncidenceError, ValueError):
    pass


class DimensionMismatch(IncidenceError, ValueError):
    pass


class NotInvertible(IncidenceError, ArithmeticError):
    pass


class UnknownElement(IncidenceError, KeyError):
    def __str__(self):
        return Exception.__str__(self)


class DuplicateElement(IncidenceError, ValueError):
    pass


class NotComparable(IncidenceError, ValueError):
    pass


class SizeLimit(IncidenceError):
    pass


class UnsupportedRing(IncidenceError):
    pass


class NotTransitive(IncidenceError, ValueError):
    pass


class NotADerivation(IncidenceError, ValueError):
    pass
