"""Exception hierarchy.

``ConfigError`` subclasses describe malformed input (exit code 2 in the CLI);
everything else under ``A1DegError`` is a mathematical failure (exit code 1).
"""


class A1DegError(Exception):
    pass


class ConfigError(A1DegError):
    pass


class ParseError(ConfigError):
    def __init__(self, message, position=None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position


class UnknownSymbol(ParseError):
    pass


class CharacteristicTwo(ConfigError):
    pass


class ReducibleModulus(ConfigError):
    pass


class DivisionByZero(A1DegError, ZeroDivisionError):
    pass


class IrreducibilityViolated(A1DegError):
    pass


class ZeroArgument(A1DegError, ValueError):
    pass


class UnsupportedField(A1DegError):
    pass


class FieldMismatch(A1DegError, ValueError):
    pass


class NotAnExtension(A1DegError):
    pass


class NotVanishing(A1DegError):
    pass


class ZeroPolynomial(A1DegError, ValueError):
    pass


class NotMonic(A1DegError, ValueError):
    pass


class NotSeparableResidue(A1DegError):
    pass


class NotSymmetric(A1DegError, ValueError):
    pass


class ZeroLeading(A1DegError, ValueError):
    pass


class Degenerate(A1DegError):
    pass


class NotAPlace(A1DegError, ValueError):
    pass


class ZeroPair(A1DegError, ValueError):
    pass


class NotReduced(A1DegError):
    pass


class NotIsolated(A1DegError):
    pass


class InseparableExtension(A1DegError):
    pass


class ZeroScale(A1DegError, ValueError):
    pass
