"""Exception hierarchy shared by the library and the command line."""


class BNReprogError(Exception):
    """Base class for all errors raised by bnreprog."""


class NetworkParseError(BNReprogError):
    """Malformed network text. Carries a 1-based line and column when known."""

    def __init__(self, message, line=None, col=None):
        self.message = message
        self.line = line
        self.col = col
        where = f"line {line}, col {col}: " if line is not None else ""
        super().__init__(where + message)


class StateParseError(BNReprogError, ValueError):
    pass


class DimensionError(BNReprogError):
    """Raised when an explicit-state operation would exceed the node cap."""


class CycleBudgetExceeded(BNReprogError):
    pass


class GuardViolation(BNReprogError):
    """The network or the chosen states break a reprogramming precondition."""


class CyclicAttractorError(GuardViolation):
    def __init__(self, attractor, message=None):
        self.attractor = attractor
        super().__init__(message or "network has a cyclic attractor")


class NotFixedPointError(GuardViolation):
    pass
