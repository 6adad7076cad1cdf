"""Exception types shared across the package."""


class DomainError(ValueError):
    """Input outside the mathematical domain of an operation."""


class PrecisionError(ArithmeticError):
    """Result cannot be trusted at working precision (truncation, conditioning, grid size)."""
