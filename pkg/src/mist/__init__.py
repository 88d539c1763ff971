"""Exact and parameterised solvers for the maximum internal spanning tree problem."""

from .branch import decide_k, kernelize, solve_max
from .dp import dp_solve, dp_state_count
from .errors import (
    BudgetExceededError,
    DegreeBoundError,
    DisconnectedGraphError,
    GraphFormatError,
    InvalidGraphError,
    InvalidTreeError,
    MistError,
    PreconditionError,
    SizeLimitError,
)
from .graph import (
    Graph,
    SpanningTree,
    bridges,
    check_prop1,
    format_graph,
    generate,
    internal_count,
    is_connected,
    parse_graph,
    validate_spanning_tree,
)
from .oracle import has_hamiltonian_path, oracle_decide, oracle_mist

__version__ = "0.1.0"
