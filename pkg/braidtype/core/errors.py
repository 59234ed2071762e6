from __future__ import annotations


class BraidError(ValueError):
    """Base class for every error raised on bad input to the library."""


class BraidParseError(BraidError):
    pass


class StrandMismatchError(BraidError):
    def __init__(self, left: int, right: int) -> None:
        super().__init__(f"strand counts differ: {left} vs {right}")
        self.left = left
        self.right = right


class NegativeLetterError(BraidError):
    pass


class InvalidPairError(BraidError):
    """The two endpoint strands are not pure, or they cross each other."""


class ZeroLengthError(BraidError):
    pass


class NotInvariantError(BraidError):
    pass


class RigidCasePreconditionError(BraidError):
    pass
