"""Custom exceptions for the IMRO solvers."""

from __future__ import annotations


class IMROError(Exception):
    """Base exception for the IMRO solvers."""

    def __init__(self, message: str, exit_code: int = 1) -> None:
        super().__init__(message)
        self.message = message
        self.exit_code = exit_code


class ParameterError(IMROError):
    """Raised when a parameter is out of range or an invariant is violated."""

    def __init__(self, message: str) -> None:
        super().__init__(message, exit_code=2)


class ShapeError(ParameterError):
    """Raised when a per-user array does not match the graph size."""

    def __init__(self, name: str, expected: int, actual: int) -> None:
        super().__init__(f"{name} has length {actual}, expected {expected}")
        self.expected = expected
        self.actual = actual


class NodeIndexError(ParameterError, IndexError):
    """Raised when a node id is outside [0, N)."""

    def __init__(self, node: int, node_count: int) -> None:
        super().__init__(f"Node {node} out of range for graph with {node_count} nodes")
        self.node = node


class AssignmentError(ParameterError):
    """Raised when a fixed stage assignment is not valid."""


class BudgetExceededError(IMROError):
    """Raised when an exact enumeration would exceed its budget."""

    def __init__(self, required: int, cap: int, what: str = "expansions") -> None:
        super().__init__(
            f"Exact solve needs {required} {what}, above the cap of {cap}; "
            "use a heuristic (--method ldh|ahc|mpso) or raise --expansion-cap",
            exit_code=3,
        )
        self.required = required
        self.cap = cap


class DataError(IMROError):
    """Raised when input data cannot be read."""

    def __init__(self, message: str) -> None:
        super().__init__(message, exit_code=4)


class EdgeListParseError(DataError):
    """Raised when an edge-list line is malformed."""

    def __init__(self, line_number: int, line: str, path: str | None = None) -> None:
        where = f"{path}, line {line_number}" if path else f"Line {line_number}"
        super().__init__(f"{where}: expected '<u>,<v>', got {line!r}")
        self.line_number = line_number
        self.line = line


class SwapError(IMROError):
    """Raised when a swap operator does not fit the position it is applied to."""
