"""Exception hierarchy shared by all latticelab modules."""


class LatticeLabError(Exception):
    """Base class for errors raised by latticelab."""


class SolverFailure(LatticeLabError, RuntimeError):
    """A numerical solver did not reach an optimal certificate.

    ``bound`` carries the best value attained (a lower bound for maximisations)
    and ``bracket`` the interval known to contain the answer, when available.
    """

    def __init__(self, message, bound=None, bracket=None):
        super().__init__(message)
        self.bound = bound
        self.bracket = bracket


class PreconditionViolation(LatticeLabError, ValueError):
    """Input violates an operation's precondition; ``witness`` pinpoints where."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class InvariantViolation(LatticeLabError, AssertionError):
    """A numerically checked identity or inequality failed its tolerance."""


class DiagonalizationError(LatticeLabError):
    """Too few columns remain to make row ``row`` oscillate by at most the tolerance."""

    def __init__(self, row, oscillation):
        super().__init__(
            f"row {row}: insufficient columns, best oscillation {oscillation!r}"
        )
        self.row = row
        self.oscillation = oscillation
