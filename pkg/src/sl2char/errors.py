"""Exception hierarchy shared by all modules."""


class SL2CharError(Exception):
    pass


class DomainError(SL2CharError, ValueError):
    """Input outside the domain of an operation (bad class, bad range, ...)."""


class DivisionByZero(SL2CharError, ZeroDivisionError):
    pass


class PrecisionLoss(SL2CharError, ArithmeticError):
    """Cancellation consumed every known digit of a p-adic quantity."""


class UndefinedForZero(DomainError):
    pass


class NotRegular(DomainError):
    """Element is central, or indistinguishable from central at working precision."""


class NoSuchElement(DomainError):
    pass
