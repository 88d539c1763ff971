"""The ordered reduction rules.

Each rule has a finder that returns one applicable action (or None) and the
actions are executed by :func:`execute`. The order of ``RULES`` matters: the
soundness argument of every rule assumes all earlier rules are exhausted.

Actions are plain tuples so that a :class:`ReductionReport` can be replayed:

* ``("delete", u, v)``   remove edge ``{u, v}`` from the working graph
* ``("add", u, v)``      commit ``{u, v}`` to F
* ``("pending", v)``     drop all pt-edges owned by ``v``
* ``("contract", v, w, z)``  replace the path ``v-w-z`` by the edge ``{v, z}``
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..graph import bridges_of, edge
from .state import SolverState

RULES = ("Cycle", "Bridge", "Deg1", "Pending", "ConsDeg2", "Deg2", "Attach", "Attach2", "Special")
OPTIONAL_RULES = frozenset({"ConsDeg2", "Attach", "Attach2", "Special"})


def _cycle(s: SolverState):
    for a, b in s.boundary():
        if b in s.tree_vertices:
            return ("delete", a, b)
    return None


def _bridge(s: SolverState):
    boundary = s.boundary()
    if not boundary:
        return None
    cut = bridges_of(s.adj)
    for a, b in boundary:
        if edge(a, b) in cut:
            return ("add", a, b)
    return None


def _deg1(s: SolverState):
    for u in sorted(s.adj):
        if len(s.adj[u]) == 1 and not s.in_VF(u):
            (v,) = s.adj[u]
            # an isolated edge outside T is a dead component, not a pendant
            if len(s.adj[v]) == 1 and v not in s.tree_vertices:
                continue
            return ("add", u, v)
    return None


def _pending(s: SolverState):
    for v in sorted(s.pt_owner):
        if len(s.pt_owner[v]) == len(s.adj[v]) - 1:
            return ("pending", v)
    return None


def _consdeg2(s: SolverState):
    for w in sorted(s.adj):
        if len(s.adj[w]) != 2 or s.in_VF(w):
            continue
        for z in sorted(s.adj[w]):
            if len(s.adj[z]) != 2:
                continue
            (v,) = s.adj[w] - {z}
            # in a triangle v-w-z the edge {v, z} already exists and the
            # contraction just merges onto it
            return ("contract", v, w, z)
    return None


def _deg2(s: SolverState):
    for u in sorted(s.tree_vertices):
        if len(s.adj[u]) == 2:
            for v in sorted(s.adj[u]):
                if edge(u, v) not in s.tree and v not in s.tree_vertices:
                    return ("add", u, v)
    return None


def _attach(s: SolverState):
    for u in sorted(s.tree_vertices):
        if s.tdeg[u] != 2:
            continue
        for v in sorted(s.adj[u]):
            if v in s.tree_vertices or edge(u, v) in s.tree:
                continue
            for z in sorted(s.adj[v]):
                if z != u and z in s.tree_vertices and 1 <= s.tdeg[z] <= 2:
                    return ("delete", u, v)
    return None


def _attach2(s: SolverState):
    for u in sorted(s.tree_vertices):
        if s.tdeg[u] != 2:
            continue
        for v in sorted(s.adj[u]):
            if edge(u, v) not in s.tree and s.has_pt(v):
                return ("delete", u, v)
    return None


def _special(s: SolverState):
    for v in sorted(s.adj):
        if len(s.adj[v]) != 2 or s.in_VF(v):
            continue
        for u in sorted(s.adj[v]):
            if s.tdeg[u] >= 1:
                (w,) = s.adj[v] - {u}
                if s.has_pt(w):
                    return ("add", u, v)
    return None


FINDERS = {
    "Cycle": _cycle,
    "Bridge": _bridge,
    "Deg1": _deg1,
    "Pending": _pending,
    "ConsDeg2": _consdeg2,
    "Deg2": _deg2,
    "Attach": _attach,
    "Attach2": _attach2,
    "Special": _special,
}


def find(s: SolverState, rule: str):
    return FINDERS[rule](s)


def execute(s: SolverState, action: tuple) -> None:
    kind = action[0]
    if kind == "delete":
        s.delete_edge(action[1], action[2])
    elif kind == "add":
        s.add_to_F(action[1], action[2])
    elif kind == "pending":
        s.remove_pending(action[1])
    elif kind == "contract":
        s.contract(*action[1:])
    else:
        raise ValueError(f"unknown action {action!r}")


@dataclass
class ReductionReport:
    # (rule, action, k delta, offset delta) per application, in order
    steps: list[tuple[str, tuple, int, int]] = field(default_factory=list)
    fixpoint: bool = False

    def __len__(self) -> int:
        return len(self.steps)

    def rules_fired(self) -> list[str]:
        return [r for r, *_ in self.steps]

    def replay(self, s: SolverState) -> None:
        for _, action, _, _ in self.steps:
            execute(s, action)


def apply_rule(s: SolverState, rule: str, check_order: bool = False) -> bool:
    """Apply one instance of ``rule``; returns False if it does not apply."""
    if check_order:
        for earlier in RULES[: RULES.index(rule)]:
            assert find(s, earlier) is None, f"{earlier} applies before {rule}"
    action = find(s, rule)
    if action is None:
        return False
    execute(s, action)
    return True


def apply_all(s: SolverState, disabled=frozenset(), tracer=None, check: bool = False) -> ReductionReport:
    """Apply the rules exhaustively, always restarting from the first one.

    Terminates because every action removes an uncommitted edge, commits an
    edge, or removes vertices.
    """
    report = ReductionReport()
    active = [r for r in RULES if r not in disabled]
    while True:
        for rule in active:
            action = FINDERS[rule](s)
            if action is None:
                continue
            before = tracer.measure(s) if tracer is not None else None
            k0, off0 = s.k, s.offset
            execute(s, action)
            dk = 0 if s.k is None else s.k - k0
            report.steps.append((rule, action, dk, s.offset - off0))
            if tracer is not None:
                tracer.on_rule(rule, before, s)
            if check:
                s.check_invariants()
            break
        else:
            report.fixpoint = True
            return report
