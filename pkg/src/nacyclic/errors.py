"""Exception hierarchy shared by every module.

Each class carries an ``exit_code`` so the CLI can map library failures onto
distinct process exit statuses without a lookup table of its own.
"""


class NacyclicError(Exception):
    exit_code = 1


class LiteralSyntaxError(NacyclicError, ValueError):
    exit_code = 3

    def __init__(self, message, text=None, position=None):
        self.text = text
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


class ContextMismatch(NacyclicError, ValueError):
    exit_code = 3


class UnsupportedCase(NacyclicError):
    exit_code = 4


class WildCase(UnsupportedCase):
    pass


class ResidualCharTwo(UnsupportedCase):
    pass


class InsufficientPrecision(NacyclicError):
    exit_code = 5


class InsufficientInputPrecision(InsufficientPrecision):
    pass


class PrecisionExhausted(InsufficientPrecision):
    pass


class NormTestInconclusive(InsufficientPrecision):
    pass


class TooLarge(NacyclicError):
    exit_code = 6


class MathError(NacyclicError, ValueError):
    """Input is well-formed but mathematically invalid for the operation."""

    exit_code = 7


class NotPrime(MathError):
    pass


class ReducibleModulus(MathError):
    pass


class DegreeMismatch(MathError):
    pass


class SpecMismatch(MathError):
    pass


class AlgebraMismatch(SpecMismatch):
    pass


class DivisionByZero(MathError, ZeroDivisionError):
    pass


class ZeroInput(MathError):
    pass


class AllElementsArePowers(MathError):
    pass


class HenselHypothesisFails(MathError):
    pass


class NotAFieldExtension(MathError):
    pass


class MissingRootsOfUnity(MathError):
    pass


class NotProper(MathError):
    pass


class UnknownTheorem(MathError):
    pass
