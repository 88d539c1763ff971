"""Measure & Conquer toolkit: branching numbers, case tuples, constants, audits."""

from ..branch.measures import KappaWeights, MuWeights, classify_kappa, classify_mu, kappa, mu
from .audit import AuditReport, audit_run
from .branching import (
    DETAILED_BASE,
    EXACT_BASE,
    FAMILIES,
    KERNEL_BASE,
    NAIVE_BASE,
    SIMPLE_BASE,
    TABLE1,
    TIGHT_DETAILED,
    beta,
    branching_number,
    case_family,
    epsilon,
    exact_case_vectors,
    kernel_bound,
    naive_bound,
    param_case_vectors,
    table1_bound,
    verify_bound,
)
