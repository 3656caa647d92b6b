"""Exception hierarchy shared by every module of :mod:`qtele`."""


class QTeleError(Exception):
    """Base class for all errors raised by qtele."""


class DivisionByZero(QTeleError, ZeroDivisionError):
    pass


class ZeroInput(QTeleError, ValueError):
    """An operation that needs a nonzero argument received zero."""


class NotCoprime(QTeleError, ValueError):
    pass


class DenominatorMismatch(QTeleError, ValueError):
    pass


class NotDivisible(QTeleError, ValueError):
    pass


class InvalidQMR(QTeleError, ValueError):
    pass


class EvaluationFailure(QTeleError, ArithmeticError):
    """A polynomial vanished at a point where the algorithm must divide by it."""


class PoleAtPoint(QTeleError, ArithmeticError):
    pass


class BadQValue(QTeleError, ValueError):
    pass


class TermSyntaxError(QTeleError, SyntaxError):
    """Malformed term or polynomial text. ``pos`` is the 0-based offset."""

    def __init__(self, message, pos=None, text=None):
        self.pos = pos
        self.source = text
        if pos is not None:
            message = f"{message} (at position {pos})"
        super().__init__(message)


class NonIntegerExponent(TermSyntaxError):
    pass


class RejectedInput(QTeleError, ValueError):
    """The term violates the zero/pole-freeness assumption of the decision procedure."""

    def __init__(self, message, warnings=()):
        super().__init__(message)
        self.warnings = list(warnings)


class InternalCheckFailure(QTeleError, AssertionError):
    """A postcondition of a sub-algorithm failed. Always a bug."""


class ResidualIdentityFailure(InternalCheckFailure):
    pass


class BudgetExceeded(QTeleError, RuntimeError):
    pass
