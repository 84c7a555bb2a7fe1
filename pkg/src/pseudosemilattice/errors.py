"""Exception hierarchy shared by all modules."""


class PseudosemilatticeError(Exception):
    """Base class for every error raised by this package."""


class TermSyntaxError(PseudosemilatticeError, ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class SchemaError(PseudosemilatticeError, ValueError):
    pass


class InvariantViolation(PseudosemilatticeError, ValueError):
    pass


class NotReduced(PseudosemilatticeError, ValueError):
    pass


class NotFolded(PseudosemilatticeError, ValueError):
    pass


class NotComparable(PseudosemilatticeError, ValueError):
    pass


class NotElementary(PseudosemilatticeError, ValueError):
    pass


class NoSuchEdge(PseudosemilatticeError, KeyError):
    pass


class NoSuchVertex(PseudosemilatticeError, KeyError):
    pass


class DegreeTooHigh(PseudosemilatticeError, ValueError):
    pass


class NotRealizable(PseudosemilatticeError, ValueError):
    pass


class UnsupportedShape(PseudosemilatticeError, ValueError):
    pass


class BadParam(PseudosemilatticeError, ValueError):
    pass


class OutOfRange(BadParam):
    pass


class ConsequenceFalse(PseudosemilatticeError, ValueError):
    pass


class SizeTooLarge(PseudosemilatticeError, ValueError):
    pass
