"""Exception types raised across the package."""


class A3CharError(Exception):
    """Base class for all package errors."""


class VarSetMismatch(A3CharError, ValueError):
    pass


class UnknownVariable(A3CharError, KeyError):
    pass


class InexactDivision(A3CharError, ArithmeticError):
    pass


class NonInvertibleBinding(A3CharError, ValueError):
    pass


class DenominatorNotUnit(A3CharError, ValueError):
    pass


class ExponentOutOfCaps(A3CharError, IndexError):
    pass


class ParseError(A3CharError, ValueError):
    pass


class NonDominantWeight(A3CharError, ValueError):
    pass


class EigenvalueCollision(A3CharError, ArithmeticError):
    pass


class NegativeExponentInput(A3CharError, ValueError):
    pass


class UnsupportedWeight(A3CharError, ValueError):
    pass


class UnknownKind(A3CharError, ValueError):
    pass


class TranscriptionError(A3CharError, AssertionError):
    """A transcribed formula produced a value no representation can have."""
