class RankRankError(Exception):
    """Base class for errors raised by rankrank."""


class MalformedInputError(RankRankError, ValueError):
    """Input text or tables that cannot be turned into a corpus."""

    def __init__(self, message, position=None):
        super().__init__(message)
        self.position = position


class FitUnavailableWarning(UserWarning):
    """A fit was requested on data that cannot support it."""
