"""Exception hierarchy shared by the ranking engine and the CLI."""


class SemrankError(Exception):
    """Base class for all errors raised by semrank."""


class EnvironmentFormatError(SemrankError):
    """The environment document could not be parsed."""


class ValidationError(SemrankError):
    """A structure violates one of the data-model invariants."""


class EnumerationCapError(SemrankError):
    """Too many candidate edges for exhaustive tree enumeration."""

    def __init__(self, count: int, cap: int):
        super().__init__(f"{count} candidate edges exceeds enumeration cap of {cap}")
        self.count = count
        self.cap = cap


class ConvergenceError(SemrankError):
    """Power iteration failed to settle on a dominant eigenpair."""

    def __init__(self, message: str, iterations: int):
        super().__init__(message)
        self.iterations = iterations
