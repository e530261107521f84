"""Typed exceptions shared across the package.

Sweep builders catch these to emit null cells; anything else propagates.
"""


class PoissonMaximaError(Exception):
    """Base class for all typed errors raised by this package."""


class DomainError(PoissonMaximaError, ValueError):
    """An argument lies outside the mathematical domain of the operation."""


class ConvergenceError(PoissonMaximaError, RuntimeError):
    """An iteration hit its cap, or a Newton iterate left its trust region."""


class BracketError(PoissonMaximaError, RuntimeError):
    """A root bracket could not be established (no sign change found)."""


class WindowError(PoissonMaximaError, RuntimeError):
    """A pmf scan window captured too little probability mass.

    Callers are expected to widen the window and retry.
    """


class RegimeError(PoissonMaximaError, ArithmeticError):
    """An asymptotic formula was evaluated outside its regime of validity."""
