"""Branching numbers, the case tuples of the three running-time analyses, and
the derived constants for the dynamic program."""

from __future__ import annotations

from collections.abc import Sequence
from itertools import product
from math import log

from ..branch.measures import KappaWeights, MuWeights
from ..errors import InfeasibleWeightsError

Labeled = list[tuple[str, tuple[float, ...]]]

# Published values, used by the CLI and the acceptance suite.
TABLE1 = {3: 2.9680, 4: 2.9874, 5: 2.9948, 6: 2.9978, 7: 2.9991, 8: 2.9996}
EXACT_BASE = 1.8669
SIMPLE_BASE = 2.7321
DETAILED_BASE = 2.1364
NAIVE_BASE = 2.8017
KERNEL_BASE = 3.4854


def branching_number(v: Sequence[float], tol: float = 1e-9) -> float:
    """The unique tau > 1 with sum(tau ** -a for a in v) == 1, by bisection."""
    if len(v) == 0:
        raise ValueError("empty branching vector")
    if len(v) == 1:
        raise ValueError("a single-entry vector has no branching number above 1")
    if min(v) <= 0:
        raise ValueError(f"branching vector entries must be positive: {tuple(v)}")
    if tol <= 0:
        raise ValueError("tol must be positive")

    def f(t: float) -> float:
        return sum(t ** -a for a in v) - 1

    # every term is at most 1/len(v) at hi, so f(hi) <= 0
    lo, hi = 1 + 1e-12, len(v) ** (1 / min(v))
    # run to float resolution in tau rather than stopping once |f| < tol:
    # large entries shift f by less than tol but still move the root
    while True:
        mid = (lo + hi) / 2
        if not lo < mid < hi:
            break
        if f(mid) > 0:
            lo = mid
        else:
            hi = mid
    tau = hi if abs(f(hi)) <= abs(f(lo)) else lo
    if abs(f(tau)) >= tol:
        raise ArithmeticError(f"no root within tol={tol} for {tuple(v)}")
    return tau


# ---------------------------------------------------------------- exact (mu)

_SITUATIONS = ("alpha", "beta", "gamma")  # deg 2; deg 3 without pt-edge; deg 3 with pt-edge


def _case5(w: MuWeights, sc: str, sx: str) -> tuple[float, float, float]:
    t31, tm2 = w.tilde(1), w.tilde_m(2)
    ind = {(h, s): float(s == sit) for h, sit in (("c", sc), ("x", sx)) for s in _SITUATIONS}

    def deleted(h: str) -> float:
        return (
            ind[h, "alpha"] * (w.w2 + tm2)
            + ind[h, "beta"] * w.d2
            + ind[h, "gamma"] * (w.w3_1 + tm2)
        )

    def added(h: str) -> float:
        return ind[h, "alpha"] * (w.w2 + tm2) + ind[h, "beta"] * w.d3_0 + ind[h, "gamma"] * t31

    first = w.w3_2 + w.d2 + (ind["x", "alpha"] + ind["c", "alpha"]) * w.w2
    return (
        first,
        w.w3_2 + 1 + deleted("x") + added("c"),
        w.w3_2 + 1 + deleted("c") + added("x"),
    )


def exact_case_vectors(w: MuWeights = MuWeights()) -> Labeled:
    """Every branching tuple of the exact analysis, labeled by case."""
    t31 = w.tilde(1)
    tm1, tm2 = w.tilde_m(1), w.tilde_m(2)
    out: Labeled = [
        ("4a/deg2", (w.w2 + w.w3_1 + t31,) * 2),
        ("4a/pt", (2 * w.w3_1 + t31,) * 2),
        ("4a/no-pt", (w.w3_1 + t31 + 1, w.w3_1 + w.d2 + min(w.w2, tm1))),
        ("4b/I", (t31 + w.d3_0 + w.w2, w.w3_1 + w.d3_0 + w.w2 + min(w.w2, tm1))),
        ("4b/II", (w.d3_2star + w.w2 + w.d3_0,) * 2),
        ("4c/deg3", (2 * w.d3_1, 2 * w.w3_1 + t31 + w.d3_0)),
        ("4c/deg2,pt-z", (w.w3_1 + w.d3_1star, 2 * w.w3_1 + t31 + w.w2 + tm2)),
        ("4c/deg2,no-pt-z", (w.d3_1 + w.d3_1star, 2 * w.w3_1 + w.d3_0 + w.w2 + tm2)),
        ("4c/pt-c", (w.d3_1star + 2 * w.w3_1, 3 * w.w3_1)),
        ("4d", (w.d3_1 + w.d3_0, w.w3_1 + w.d2 + w.d3_0)),
    ]
    for sc, sx in product(_SITUATIONS, repeat=2):
        out.append((f"5/c={sc},x={sx}", _case5(w, sc, sx)))
    return out


# ------------------------------------------------------ parameterised (kappa)

def param_case_vectors(w: KappaWeights = KappaWeights(), simple: bool = False) -> Labeled:
    """Tuples of the detailed parameterised analysis, or of the simple one."""
    if simple:
        o = w.simple_w
        return [
            ("4/dT(a)=1", (o, 1.0)),
            ("4/dT(a)=2", (2 - o, 1 - o)),
            ("5", (1 - o, 2 - o, 2 - o)),
        ]
    w1, w2, w3 = w.w1, w.w2, w.w3
    return [
        ("4a/deg2", (1 + w1 - w2,) * 2),
        ("4a/pt", (2 + w1 - w3,) * 2),
        ("4a/no-pt", (2 + w1, 1 + w2)),
        ("4b/dT(a)=1", (1 + w1 - w2, 1 + w3 - w2)),
        ("4b/dT(a)=2", (2 - w1 - w2, 1 - w1 - w2 + w3)),
        ("4c", (2 * w1 - w3, 2.0)),
        ("4d", (w1, 1 + w2)),
        ("5/q-in-X", (2 - w1, 3 - 2 * w1, 1 - w1 + w2)),
        ("5/all-deg3", (1 - w1 + w2, 2 - w1 + w2, 2 - w1 + w2)),
        ("5/deg2-neighbour", (2 - w1,) * 3),
    ]


TIGHT_DETAILED = ("4b/dT(a)=2", "4c", "4d", "5/all-deg3")

FAMILIES = ("exact", "param_detailed", "param_simple")


def case_family(family: str, w: MuWeights | KappaWeights | None = None) -> Labeled:
    if family == "exact":
        return exact_case_vectors(w or MuWeights())
    if family == "param_detailed":
        return param_case_vectors(w or KappaWeights())
    if family == "param_simple":
        return param_case_vectors(w or KappaWeights(), simple=True)
    raise ValueError(f"unknown family {family!r}; expected one of {FAMILIES}")


def verify_bound(family: str, w: MuWeights | KappaWeights | None = None) -> tuple[float, str]:
    """Largest branching number over a family, with the label of the worst case."""
    best, worst = 0.0, ""
    for label, vec in case_family(family, w):
        if min(vec) <= 0:
            raise InfeasibleWeightsError(label, vec)
        tau = branching_number(vec)
        if tau > best:
            best, worst = tau, label
    return best, worst


# ------------------------------------------------------ dynamic-programming side

def beta(delta: int) -> float:
    """Base of the bound on connected vertex sets in graphs of max degree delta."""
    if delta < 1:
        raise ValueError("delta must be at least 1")
    return (2 ** (delta + 1) - 1) ** (1 / (delta + 1))


def table1_bound(delta: int) -> float:
    return beta(delta) + 1


def epsilon(delta: int) -> float:
    """The exponent saving: (beta + 1)^n == 3^((1 - eps) n)."""
    return 1 - log(table1_bound(delta), 3)


def naive_bound() -> float:
    """Edge-subset enumeration through the line graph of a subcubic graph."""
    return beta(4) ** 1.5


def kernel_bound(base: float = EXACT_BASE) -> float:
    """Exact algorithm run on a 2k-vertex kernel."""
    return base ** 2
