"""Exception types shared by every module."""


class LamplighterError(Exception):
    """Base class for all errors raised by this package."""


class InvalidInput(LamplighterError, ValueError):
    pass


class BudgetExceeded(LamplighterError):
    pass


class FactorizationBudgetExceeded(BudgetExceeded):
    pass


class NeedsMoreDigits(LamplighterError):
    """The certified precision of a value is too low for the requested claim."""


class InternalError(LamplighterError, AssertionError):
    """An invariant that should hold by construction was violated."""
