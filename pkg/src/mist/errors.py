"""Exception hierarchy shared by every solver module."""

from __future__ import annotations


class MistError(Exception):
    """Base class for all errors raised by this package."""


class GraphFormatError(MistError, ValueError):
    """Malformed graph text. ``line`` is 1-based, or None if not line-specific."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class InvalidGraphError(MistError, ValueError):
    """The edge data does not describe a simple undirected graph."""


class InvalidTreeError(MistError, ValueError):
    """An edge set is not a spanning tree of its host graph.

    ``kind`` is one of ``not_subgraph``, ``wrong_cardinality``, ``cyclic`` or
    ``not_spanning``.
    """

    def __init__(self, kind: str, message: str):
        self.kind = kind
        super().__init__(f"{kind}: {message}")


class PreconditionError(MistError, ValueError):
    """Input violates a solver precondition."""


class DisconnectedGraphError(PreconditionError):
    pass


class DegreeBoundError(PreconditionError):
    pass


class SizeLimitError(PreconditionError):
    pass


class BudgetExceededError(MistError, RuntimeError):
    """Brute-force search hit its node budget."""


class InfeasibleWeightsError(MistError, ValueError):
    """A branching tuple has a nonpositive entry under the given weights."""

    def __init__(self, label: str, vector: tuple[float, ...]):
        super().__init__(f"case {label}: nonpositive entry in {vector}")
        self.label = label
        self.vector = vector
