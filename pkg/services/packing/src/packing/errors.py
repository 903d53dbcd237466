class PackingError(Exception):
    """Base class for every error raised by the packing service."""


class InstanceParseError(PackingError, ValueError):
    """
    Raised when an instance file does not follow the instance text grammar.

    Args:
        line (int): 1-based line number where the problem was detected
        reason (str): Human readable description of the problem
    """

    def __init__(self, line: int, reason: str) -> None:
        self.line = line
        self.reason = reason
        super().__init__(f"line {line}: {reason}")


class InvariantViolation(PackingError):
    """Raised when an algorithm run breaks its own bookkeeping (should never happen)."""
