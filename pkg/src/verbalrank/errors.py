"""Exception types shared across the package."""


class WordSyntaxError(ValueError):
    """Malformed or non-multilinear bracket expression."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class CapExceeded(RuntimeError):
    """Group too large for an exhaustive (table or lattice) computation."""


class BudgetExceeded(RuntimeError):
    """An exhaustive enumeration would exceed its evaluation budget."""


class NotNormal(ValueError):
    """A subgroup required to be normal is not."""
