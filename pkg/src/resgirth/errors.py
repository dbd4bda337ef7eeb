"""Exception hierarchy.

Every domain error derives from :class:`GirthError`; the CLI maps these to
exit status 2.
"""


class GirthError(Exception):
    pass


# numbers
class NoPrimeInInterval(GirthError, ValueError):
    pass


# galois
class NotPrime(GirthError, ValueError):
    pass


class ReducibleModulus(GirthError, ValueError):
    pass


class ZeroInversion(GirthError, ZeroDivisionError):
    pass


class FieldMismatch(GirthError, TypeError):
    pass


# poly
class DivisionByZeroPoly(GirthError, ZeroDivisionError):
    pass


class ConstantPolynomial(GirthError, ValueError):
    pass


class NoVariables(GirthError, ValueError):
    pass


class EntrySyntaxError(GirthError, ValueError):
    """Malformed entry expression; ``pos`` is the 0-based character offset."""

    def __init__(self, message, text="", pos=0):
        super().__init__(f"{message} at position {pos}: {text!r}")
        self.text = text
        self.pos = pos


class ZeroDenominator(GirthError, ZeroDivisionError):
    pass


class VariableIndexOutOfRange(GirthError, ValueError):
    pass


# survival
class ZeroPolynomial(GirthError, ValueError):
    pass


# matgroup
class SchemaError(GirthError, ValueError):
    pass


class NonSquareMatrix(SchemaError):
    pass


class SingularGenerator(GirthError, ValueError):
    pass


class BadCharacteristic(SchemaError):
    pass


class BallBudgetExceeded(GirthError, RuntimeError):
    pass


class DenominatorVanishes(GirthError, ZeroDivisionError):
    pass


# girth
class SearchBudgetExceeded(GirthError, RuntimeError):
    pass


class DegenerateWindow(GirthError, ValueError):
    pass
