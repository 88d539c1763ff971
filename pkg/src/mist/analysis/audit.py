"""Run the branching solver with measure hooks and collect monotonicity data."""

from __future__ import annotations

from dataclasses import dataclass, field

from ..branch.measures import KappaWeights, MuWeights, kappa, mu
from ..branch.search import Tracer, decide_k, solve_max
from ..graph import Graph
from .branching import EXACT_BASE

EPS = 1e-9


@dataclass
class AuditReport:
    mode: str
    n: int
    result: int | bool = 0
    # rule -> [min, max] of (post - pre)
    rule_mu: dict[str, list[float]] = field(default_factory=dict)
    rule_kappa: dict[str, list[float]] = field(default_factory=dict)
    rule_applications: int = 0
    mu_violations: list[tuple[str, float]] = field(default_factory=list)
    kappa_violations: list[tuple[str, float]] = field(default_factory=list)
    branch_violations: list[tuple[str, float]] = field(default_factory=list)
    kappa_range_violations: list[float] = field(default_factory=list)
    branch_nodes: int = 0
    search_nodes: int = 0
    kappa_stops: int = 0
    kappa_stop_failures: int = 0

    @property
    def ratio(self) -> float:
        """Search nodes relative to the proven bound; diagnostic only."""
        return self.search_nodes / EXACT_BASE ** self.n

    @property
    def violations(self) -> int:
        return (
            len(self.mu_violations)
            + len(self.kappa_violations)
            + len(self.branch_violations)
            + len(self.kappa_range_violations)
        )

    def merge(self, other: AuditReport) -> None:
        for mine, theirs in ((self.rule_mu, other.rule_mu), (self.rule_kappa, other.rule_kappa)):
            for rule, (lo, hi) in theirs.items():
                _widen(mine, rule, lo)
                _widen(mine, rule, hi)
        self.rule_applications += other.rule_applications
        self.mu_violations += other.mu_violations
        self.kappa_violations += other.kappa_violations
        self.branch_violations += other.branch_violations
        self.kappa_range_violations += other.kappa_range_violations
        self.branch_nodes += other.branch_nodes
        self.search_nodes += other.search_nodes
        self.kappa_stops += other.kappa_stops
        self.kappa_stop_failures += other.kappa_stop_failures


def _widen(table: dict[str, list[float]], rule: str, delta: float) -> None:
    if rule in table:
        lo, hi = table[rule]
        table[rule] = [min(lo, delta), max(hi, delta)]
    else:
        table[rule] = [delta, delta]


class MeasureTracer(Tracer):
    def __init__(self, report: AuditReport, mu_w: MuWeights, kappa_w: KappaWeights, decision: bool,
                 kappa_range: bool):
        self.report = report
        self.mu_w = mu_w
        self.kappa_w = kappa_w
        self.decision = decision
        self.kappa_range = kappa_range

    def measure(self, s):
        m = mu(s, self.mu_w)
        return (m, kappa(s, w=self.kappa_w)) if self.decision else (m, None)

    def on_rule(self, rule, before, s):
        after = self.measure(s)
        r = self.report
        r.rule_applications += 1
        dmu = after[0] - before[0]
        _widen(r.rule_mu, rule, dmu)
        if dmu > EPS:
            r.mu_violations.append((rule, dmu))
        if self.decision:
            dk = after[1] - before[1]
            _widen(r.rule_kappa, rule, dk)
            if dk > EPS:
                r.kappa_violations.append((rule, dk))

    def on_node(self, s):
        self.report.branch_nodes += 1
        if self.decision and self.kappa_range:
            kap = kappa(s, w=self.kappa_w)
            if not (-EPS < kap <= s.k + EPS):
                self.report.kappa_range_violations.append(kap)

    def on_branch(self, case, parent, child):
        dmu = mu(child, self.mu_w) - parent[0]
        if dmu > -EPS:
            self.report.branch_violations.append((case, dmu))


def audit_run(
    g: Graph,
    mode: str = "max",
    k: int | None = None,
    *,
    use_kappa_stop: bool = True,
    mu_weights: MuWeights = MuWeights(),
    kappa_weights: KappaWeights = KappaWeights(),
    hp_precheck: bool = False,
) -> AuditReport:
    """Solve ``g`` while checking that rules never raise mu (or kappa) and
    branching always lowers mu.

    The Hamiltonian-path shortcut is off by default so that the search itself
    is exercised on every input.
    """
    report = AuditReport(mode=mode, n=g.n)
    if mode == "max":
        tracer = MeasureTracer(report, mu_weights, kappa_weights, False, False)
        res = solve_max(g, hp_precheck=hp_precheck, tracer=tracer)
        report.result = res.value
    elif mode == "decide":
        if k is None:
            raise ValueError("decide mode needs k")
        tracer = MeasureTracer(report, mu_weights, kappa_weights, True, use_kappa_stop)
        res = decide_k(g, k, use_kappa_stop=use_kappa_stop, kappa_weights=kappa_weights,
                       hp_precheck=hp_precheck, tracer=tracer)
        report.result = res.answer
    else:
        raise ValueError(f"unknown audit mode {mode!r}")
    report.search_nodes = res.stats.nodes
    report.kappa_stops = res.stats.kappa_stops
    report.kappa_stop_failures = res.stats.kappa_stop_failures
    return report
