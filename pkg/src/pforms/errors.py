"""Exception hierarchy shared by every module.

Each error corresponds to a stable CLI error code (the class name).
"""


class PFormError(Exception):
    """Base class for all domain errors raised by this package."""

    @property
    def code(self) -> str:
        return type(self).__name__


# field construction / arithmetic
class NonPrime(PFormError):
    pass


class ReducibleModulus(PFormError):
    pass


class MissingModulus(PFormError):
    pass


class DivideByZero(PFormError):
    pass


# polynomial / rational-function arithmetic
class NegativePolyPower(PFormError):
    pass


class DivideByZeroFunction(PFormError):
    pass


class DenominatorVanishes(PFormError):
    pass


class InvalidContext(PFormError):
    pass


class ContextMismatch(PFormError):
    pass


# degree ring
class NotAUnit(PFormError):
    pass


class InvalidUnitSystem(PFormError):
    pass


# composition monoid
class ConstantRightOperand(PFormError):
    pass


# group machinery
class NotADivisor(PFormError):
    pass


class VerificationFailed(PFormError):
    pass


class PreconditionUnmet(PFormError):
    pass


class MissingInverse(PFormError):
    pass


class ZeroExponent(PFormError):
    pass


class BudgetExceeded(PFormError):
    pass


# Dobbertin forms / permutation pipeline
class BadN(PFormError):
    pass


class BadCongruence(PFormError):
    pass


class DenominatorVanishesModField(PFormError):
    pass


class InjectivityOnDFailed(PFormError):
    pass


# expression front-end
class ParseError(PFormError):
    """Syntax error with a character position."""

    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} (at position {pos})")
        self.pos = pos


class UnknownVariable(ParseError):
    pass


class IndexOutOfRange(ParseError):
    pass
