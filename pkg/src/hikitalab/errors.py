"""Shared exception types."""


class BudgetExceeded(RuntimeError):
    """A Groebner run or a combinatorial enumeration exceeded its budget.

    Budgets are first-class outcomes: callers report them, they are never
    swallowed.
    """

    def __init__(self, phase, detail):
        super().__init__("budget exceeded during %s (%s)" % (phase, detail))
        self.phase = phase
        self.detail = detail


class StabilityError(ValueError):
    """An operation required a stable representation and got an unstable one."""


class FiberSolveError(RuntimeError):
    """The exact linear system for a moment-map fiber had no solution."""

    def __init__(self, message, seed=None):
        super().__init__(message)
        self.seed = seed
