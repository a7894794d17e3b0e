"""Exception hierarchy shared by the library and the CLI."""


class SymprimeError(Exception):
    """Base class for all library errors."""


class InvalidArgumentError(SymprimeError, ValueError):
    pass


class RangeError(SymprimeError, ValueError):
    """A query fell outside the range covered by a sieve."""


class ResourceError(SymprimeError):
    """The requested computation would exceed the configured memory budget."""

    def __init__(self, message: str, required_bytes: int = 0, budget_bytes: int = 0):
        super().__init__(message)
        self.required_bytes = required_bytes
        self.budget_bytes = budget_bytes


class UnsupportedInputError(SymprimeError, ValueError):
    pass


class NumericalError(SymprimeError, ArithmeticError):
    """Quadrature did not reach the requested tolerance.

    ``estimate`` and ``error`` carry the best value found and its error bound.
    """

    def __init__(self, message: str, estimate: float, error: float):
        super().__init__(message)
        self.estimate = estimate
        self.error = error
