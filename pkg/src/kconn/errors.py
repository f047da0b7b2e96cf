class GraphError(ValueError):
    """Invalid graph input (self-loop, duplicate edge, bad vertex id, ...)."""


class ParseError(GraphError):
    """Malformed graph file; carries the offending line number."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class InvariantViolation(AssertionError):
    """A structural invariant that must hold by construction was violated."""


class BenchMismatch(RuntimeError):
    """Two algorithms produced different digests for the same instance."""
