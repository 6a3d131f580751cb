"""Exception types shared across the package."""


class InvalidInput(ValueError):
    """Arguments violate an operation's precondition (dimension mismatch, k=0, ...)."""


class IllegalMove(Exception):
    """A sigma-game move on a vertex whose lamp is off."""


class BudgetExceeded(RuntimeError):
    """An enumeration or search exceeded its state budget."""


class Unsupported(Exception):
    """Input is structurally valid but outside the supported range."""
