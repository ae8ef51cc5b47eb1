"""Exception hierarchy shared by every module."""


class MooreTribeError(Exception):
    """Base class for all library errors."""


class InvalidGraph(MooreTribeError):
    pass


class DanglingEdge(InvalidGraph):
    pass


class DuplicateEdge(InvalidGraph):
    pass


class InvalidMorphism(MooreTribeError):
    pass


class InvalidIntervalMap(MooreTribeError):
    pass


class InvalidPath(MooreTribeError):
    pass


class NotComposable(MooreTribeError):
    pass


class BudgetExceeded(MooreTribeError):
    pass


class PreconditionError(MooreTribeError):
    """A named precondition of an operation does not hold."""


class NotAFibration(PreconditionError):
    """Raised with the first failing ``(source, target, fiber point)`` triple."""

    def __init__(self, witness, message=None):
        self.witness = witness
        y, y2, x = witness
        super().__init__(message or f"no lift of edge {y}->{y2} from fiber point {x}")


class NotFiberwise(PreconditionError):
    pass


class SchemaError(MooreTribeError):
    """Malformed JSON input; ``path`` locates the offending field."""

    def __init__(self, path, message):
        self.path = path
        super().__init__(f"{path}: {message}")
