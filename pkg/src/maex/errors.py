"""Exception types raised by the engine."""


class MaexError(Exception):
    """Base class for all engine errors."""


class VariableMismatchError(MaexError, ValueError):
    """Two series in different formal variables were combined."""


class SingularSeriesError(MaexError, ZeroDivisionError):
    """Inversion of a series whose constant term is zero."""


class DivergentProductError(MaexError, ValueError):
    """An infinite product whose factors do not tend to 1 q-adically."""


class UndefinedStatisticError(MaexError, ValueError):
    """A partition statistic was requested on the empty partition."""


class BudgetExceededError(MaexError):
    """A computation would exceed its configured search or series budget."""


class IdentityMismatchError(MaexError, AssertionError):
    """Two independent computations of the same series disagreed.

    Raised only where agreement is an internal invariant of the engine,
    for instance the two defining sums of a mock theta function.
    """
