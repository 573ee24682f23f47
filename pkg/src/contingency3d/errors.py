"""Exception types shared across the package."""


class Contingency3DError(Exception):
    """Base class for all package errors."""


class InvalidPartition(Contingency3DError, ValueError):
    pass


class PartitionParseError(InvalidPartition):
    def __init__(self, token: str, text: str):
        super().__init__(f"malformed partition token {token!r} in {text!r}")
        self.token = token
        self.text = text


class UnequalTotals(Contingency3DError, ValueError):
    pass


class NotDominated(Contingency3DError, ValueError):
    pass


class OrderViolation(Contingency3DError, ValueError):
    pass


class IndexOutOfRange(Contingency3DError, IndexError):
    pass


class FrontOverflow(Contingency3DError, ValueError):
    pass


class InternalFlipMissing(Contingency3DError, AssertionError):
    """A flip pair that the dominance argument guarantees was not found."""


class DomainViolation(Contingency3DError):
    """A stage operator was applied outside its domain."""

    def __init__(self, stage: str, reason: str):
        super().__init__(f"{stage}: {reason}")
        self.stage = stage
        self.reason = reason


class BudgetExceeded(Contingency3DError):
    def __init__(self, what: str, limit: int):
        super().__init__(f"search budget exceeded: {what} > {limit}")
        self.what = what
        self.limit = limit


class InvalidParams(Contingency3DError, ValueError):
    pass
