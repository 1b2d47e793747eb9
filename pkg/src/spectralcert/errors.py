"""Exception types shared across the package."""


class GraphInputError(ValueError):
    """Invalid argument to a graph operation (bad vertex, self-loop, bad parameter)."""


class Graph6ParseError(GraphInputError):
    """Malformed graph6 input.  Carries the byte offset of the defect."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (byte offset {offset})")
        self.offset = offset


class DomainError(GraphInputError):
    """A formula was evaluated outside its valid parameter range."""


class CapacityError(GraphInputError):
    """Input exceeds the configured cap of an exact search."""


class ConvergenceError(RuntimeError):
    """Eigensolver failed to certify within the iteration budget.

    Carries the best iterate so callers can inspect how close it got.
    """

    def __init__(self, message: str, radius: float, residual: float, iterations: int):
        super().__init__(message)
        self.radius = radius
        self.residual = residual
        self.iterations = iterations


class NumericError(RuntimeError):
    """A root-finding or numeric routine could not produce a certified answer."""
