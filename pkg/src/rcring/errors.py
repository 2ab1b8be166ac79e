"""Exception hierarchy shared by every module."""


class RcrError(Exception):
    """Base class for all package errors."""


class ParamsError(RcrError, ValueError):
    """Invalid (n, d, r) triple or malformed vertex."""


class WrongCaseError(RcrError, ValueError):
    """A regime-specific routine was called outside its regime."""


class BudgetExceeded(RcrError):
    """The requested computation exceeds the configured size budget."""

    def __init__(self, what: str, size: int, limit: int):
        self.what = what
        self.size = size
        self.limit = limit
        super().__init__(f"{what}: size {size} exceeds budget {limit}")


class NotAnEdge(RcrError, ValueError):
    """The two vertices given are not adjacent."""


class InvalidPath(RcrError, ValueError):
    """A sequence or path violates the adjacency rules."""


class VerificationError(RcrError):
    """A computed quantity disagrees with its oracle or with a proven bound."""
