"""Exception hierarchy shared by all zitterlab modules."""


class ZitterError(Exception):
    """Base class for every error raised by this package."""


class CycleError(ZitterError):
    pass


class UnknownEvent(ZitterError, KeyError):
    pass


class InvalidChain(ZitterError):
    pass


class FixtureError(ZitterError):
    pass


class ProjectionUndefined(ZitterError):
    pass


class NotBetween(ZitterError):
    pass


class ZeroDuration(ZitterError, ZeroDivisionError):
    pass


class NonFiniteAmplitude(ZitterError, ValueError):
    pass


class SeqSyntaxError(ZitterError):
    """Malformed sequence expression; ``pos`` is the 0-based offset of the bad token."""

    def __init__(self, message, pos):
        super().__init__(f"{message} at position {pos}")
        self.pos = pos


class EmptyAtom(SeqSyntaxError):
    pass


class MissingLink(ZitterError, KeyError):
    def __init__(self, first, second):
        super().__init__(f"no amplitude for link ({first}, {second})")
        self.link = (first, second)

    def __str__(self):
        return self.args[0]


class ChainMismatch(ZitterError):
    pass


class CapExceeded(ZitterError):
    pass


class DomainError(ZitterError, ValueError):
    pass


class InsufficientHistory(ZitterError):
    pass
