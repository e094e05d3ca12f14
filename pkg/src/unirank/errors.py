"""Exception hierarchy shared by every pipeline stage.

Each class carries the process exit code the CLI uses when it aborts on it.
"""


class UnirankError(Exception):
    exit_code = 1


class ValidationError(UnirankError, ValueError):
    """Bad configuration or arguments."""

    exit_code = 2


class ParseError(ValidationError):
    def __init__(self, message: str, line: int | None = None, path=None):
        self.line = line
        self.path = path
        where = ""
        if path is not None:
            where += f"{path}:"
        if line is not None:
            where += f"{line}:"
        super().__init__(f"{where} {message}" if where else message)


class CapacityError(ValidationError):
    """Node id does not fit the configured id width."""


class DimensionError(ValidationError):
    pass


class DomainError(ValidationError):
    pass


class InputError(ValidationError):
    pass


class ConvergenceError(UnirankError):
    exit_code = 3

    def __init__(self, message: str, residual: float, iterations: int, probabilities=None):
        super().__init__(message)
        self.residual = residual
        self.iterations = iterations
        self.probabilities = probabilities


class UnresolvedEntityError(UnirankError):
    exit_code = 4

    def __init__(self, message: str, items):
        self.items = list(items)
        listing = "\n".join(f"  {item}" for item in self.items)
        super().__init__(f"{message}\n{listing}" if listing else message)
