"""Branch-and-reduce solver for subcubic graphs."""

from .measures import KappaWeights, MuWeights, classify_kappa, classify_mu, kappa, mu
from .rules import OPTIONAL_RULES, RULES, ReductionReport, apply_all, apply_rule
from .search import (
    BranchSelection,
    DecisionResult,
    KernelResult,
    MaxResult,
    Tracer,
    decide_k,
    initial_states,
    kernelize,
    select_branch_edge,
    solve_max,
)
from .state import SolverState, lift

__all__ = [
    "BranchSelection", "DecisionResult", "KappaWeights", "KernelResult", "MaxResult",
    "MuWeights", "OPTIONAL_RULES", "RULES", "ReductionReport", "SolverState", "Tracer",
    "apply_all", "apply_rule", "classify_kappa", "classify_mu", "decide_k",
    "initial_states", "kappa", "kernelize", "lift", "mu", "select_branch_edge", "solve_max",
]
