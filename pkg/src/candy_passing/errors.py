"""Exception types shared across the package."""


class CandyError(Exception):
    pass


class InvalidConfiguration(CandyError, ValueError):
    """Raised when a candy distribution violates n >= 3, c >= 1, or the size cap."""


class CapExceeded(CandyError):
    """No state recurred within the allotted number of rounds."""

    def __init__(self, counts, max_rounds):
        self.counts = tuple(counts)
        self.max_rounds = max_rounds
        super().__init__(
            f"no recurrence within {max_rounds} rounds starting from {list(self.counts)}"
        )


class CompositionOverflow(CandyError, OverflowError):
    """The number of compositions does not fit in 64 bits."""


class IndexOutOfRange(CandyError, IndexError):
    pass


class PreconditionError(CandyError, ValueError):
    """A claim verifier was asked about parameters outside its hypothesis."""
