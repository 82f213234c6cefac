"""Exception types shared across the package."""


class NetmedianError(Exception):
    """Base class for errors raised by netmedian."""


class EdgeListParseError(NetmedianError):
    """An edge-list line could not be parsed."""

    def __init__(self, line_number: int, message: str):
        super().__init__(f"line {line_number}: {message}")
        self.line_number = line_number


class EmptyGraphError(NetmedianError):
    """No usable edges survived normalization."""


class DisconnectedGraphError(NetmedianError):
    """An operation that needs a connected graph was given a disconnected one."""


class ConvergenceError(NetmedianError):
    """An iterative solver did not reach its tolerance."""

    def __init__(self, message: str, residual: float, iterations: int):
        super().__init__(message)
        self.residual = residual
        self.iterations = iterations


class BudgetExceededError(NetmedianError):
    """An exhaustive computation would exceed its configured budget."""

    def __init__(self, message: str, budget: int, required: int):
        super().__init__(message)
        self.budget = budget
        self.required = required
