"""Exception hierarchy.

Semi-decidable outcomes (Unknown, NoGapFound, ...) are values, not
exceptions; only genuine failures of a precondition raise.
"""


class StratumError(Exception):
    """Base class for all library errors."""


class ApartnessNotWitnessed(StratumError):
    """A real could not be certified apart from zero at the given precision."""

    def __init__(self, k: int):
        super().__init__(f"no apartness from zero witnessed at precision {k}")
        self.k = k


class NoSignChange(StratumError):
    pass


class DomainViolation(StratumError):
    pass


class OpenExpression(StratumError):
    pass


class UnsupportedNode(StratumError):
    pass


class DominanceViolated(StratumError):
    pass


class ChoiceOutsideInterval(StratumError):
    pass


class NotSeparated(StratumError):
    pass


class BudgetExceededError(StratumError):
    """Raised inside a metered evaluation once the step limit is passed."""

    def __init__(self, consumed: int, limit: int):
        super().__init__(f"step budget exceeded: {consumed} > {limit}")
        self.consumed = consumed
        self.limit = limit


class ParseError(StratumError):
    """Syntax error with a 1-based position and the expected token class."""

    def __init__(self, position: int, expected: str, message: str = ""):
        text = f"at position {position}: expected {expected}"
        if message:
            text += f" ({message})"
        super().__init__(text)
        self.position = position
        self.expected = expected
