"""Exception types raised across the package."""


class CircuitError(ValueError):
    """Malformed circuit: bad qubit index, arity, or duplicate operands."""


class QasmError(ValueError):
    """Base class for OpenQASM ingestion problems."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        if line is not None:
            message = f"line {line}, column {column}: {message}"
        super().__init__(message)


class QasmSyntaxError(QasmError):
    pass


class QasmSemanticError(QasmError):
    pass


class UnsupportedGateError(QasmError):
    def __init__(self, gate: str, line: int | None = None, column: int | None = None):
        self.gate = gate
        super().__init__(f"unsupported gate {gate!r}", line, column)


class ArchitectureError(ValueError):
    """Malformed device graph (self-loop, endpoint out of range)."""


class ConnectivityError(ArchitectureError):
    def __init__(self, components: list[list[int]]):
        self.components = components
        super().__init__(f"architecture graph is disconnected; components: {components}")


class UnknownArchitectureError(LookupError):
    pass


class IllegalSwapError(ValueError):
    pass


class CapacityError(ValueError):
    pass


class RoutingInvariantError(RuntimeError):
    """Internal invariant violated during routing; indicates a bug."""


class GenerationError(ValueError):
    pass


class UnboundGateError(KeyError):
    """Opaque gate name without a matrix binding in the simulator."""
