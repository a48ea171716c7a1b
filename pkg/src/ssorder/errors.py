"""Exception types shared across the package."""


class FieldMismatchError(TypeError):
    """Arithmetic between elements of two different fields."""


class PrecisionError(ArithmeticError):
    """A quantity could not be determined at the working precision."""


class BranchMatchError(ValueError):
    """No square-root branch reproduces the required base point."""
