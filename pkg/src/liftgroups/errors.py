"""Exception hierarchy shared by all modules."""


class LiftGroupsError(Exception):
    """Base class for every error raised by the package."""


class OrderBoundExceeded(LiftGroupsError):
    pass


class InvalidSpec(LiftGroupsError):
    pass


class NotNormal(LiftGroupsError):
    pass


class NotAHomomorphism(LiftGroupsError):
    pass


class SourceTargetMismatch(LiftGroupsError):
    pass


class AlreadySubnormal(LiftGroupsError):
    pass


class ArityMismatch(LiftGroupsError):
    pass


class UnsupportedSquare(LiftGroupsError):
    """The square cannot be decided by enumeration (a presented object on the right)."""

    def __init__(self, message, pair=None):
        super().__init__(message)
        self.pair = pair


class SearchBudgetExceeded(LiftGroupsError):
    """Candidate count crossed the configured budget; results are never truncated."""

    def __init__(self, message, pair=None):
        super().__init__(message)
        self.pair = pair


class ParseError(LiftGroupsError):
    pass
