"""Exception hierarchy shared by all modules."""


class GemfreeError(Exception):
    """Base class for library errors."""


class ParameterError(GemfreeError, ValueError):
    """Invalid arguments or family parameters."""


class CapacityError(GemfreeError, ValueError):
    """A size cap (vertex count, pattern size, enumeration range) was exceeded."""


class ParseError(GemfreeError, ValueError):
    """Malformed graph6 input."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (byte offset {offset})")
        self.offset = offset


class StructuralError(GemfreeError, ValueError):
    """The graph does not have the structure an operation requires."""


class ConvergenceError(GemfreeError, RuntimeError):
    """Power iteration did not reach the requested tolerance."""

    def __init__(self, message: str, residual: float, iterations: int):
        super().__init__(f"{message}: residual={residual:.3e} after {iterations} iterations")
        self.residual = residual
        self.iterations = iterations
