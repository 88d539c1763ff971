"""Branch-and-reduce search for subcubic graphs, in max and decision mode."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations

from ..errors import DegreeBoundError, DisconnectedGraphError, PreconditionError
from ..graph import Edge, Graph, SpanningTree, dfs_spanning_tree, edge, internal_count, is_connected, validate_spanning_tree
from ..oracle import hamiltonian_path
from .measures import KappaWeights, classify_kappa, kappa
from .rules import OPTIONAL_RULES, apply_all
from .state import SolverState, complete_tree, lift


@dataclass(frozen=True)
class BranchSelection:
    case: str  # "4a", "4b", "4c", "4d" or "5"
    a: int
    b: int
    aux: tuple[int, ...] = ()


def select_branch_edge(s: SolverState) -> BranchSelection | None:
    """Pick the branching edge {a, b}, a in V(T), by the step-4 priorities.

    Among edges of equal priority the smallest canonical edge wins. Returns
    None when the boundary is empty.
    """
    cands = [(a, b) for a, b in s.boundary() if b not in s.tree_vertices]
    if not cands:
        return None
    for a, b in cands:
        for c in sorted(s.adj[b]):
            if c != a and c in s.tree_vertices:
                return BranchSelection("4a", a, b, (c,))
    for a, b in cands:
        if len(s.adj[b]) == 2:
            return BranchSelection("4b", a, b)
    for a, b in cands:
        if s.has_pt(b):
            return BranchSelection("4c", a, b)
    for a, b in cands:
        if s.tdeg[a] == 1:
            return BranchSelection("4d", a, b)
    a, b = cands[0]
    rest = sorted(s.adj[b] - {a})
    assert len(rest) == 2, f"case 5 needs deg(b) = 3, got {len(rest) + 1}"
    return BranchSelection("5", a, b, tuple(rest))


def branch_children(s: SolverState, sel: BranchSelection) -> list[SolverState]:
    a, b = sel.a, sel.b
    if sel.case != "5":
        take = s.clone()
        take.add_to_F(a, b)
        drop = s.clone()
        drop.delete_edge(a, b)
        return [take, drop]
    c, x = sel.aux
    drop = s.clone()
    drop.delete_edge(a, b)
    children = [drop]
    for keep, cut in ((c, x), (x, c)):
        child = s.clone()
        child.add_to_F(a, b)
        child.add_to_F(b, keep)
        child.delete_edge(b, cut)
        children.append(child)
    return children


def initial_states(g: Graph, k: int | None = None) -> list[tuple[int, SolverState]]:
    """One state per vertex v and per way of making v internal.

    Degree 3: each pair of incident edges forced with the third deleted, plus
    all three forced. Degree 2: both edges forced.
    """
    base = SolverState.initial(g, k)
    out = []
    for v in range(g.n):
        nb = g.adjacency[v]
        if len(nb) < 2:
            continue
        options = [(pair, tuple(set(nb) - set(pair))) for pair in combinations(nb, 2)]
        if len(nb) == 3:
            options.append((nb, ()))
        for keep, cut in options:
            s = base.clone()
            for u in keep:
                s.add_to_F(v, u)
            for u in cut:
                s.delete_edge(v, u)
            out.append((v, s))
    return out


class Tracer:
    """Observer hooks; the default does nothing."""

    def measure(self, s: SolverState):
        return None

    def on_rule(self, rule: str, before, s: SolverState) -> None:
        pass

    def on_node(self, s: SolverState) -> None:
        pass

    def on_branch(self, case: str, parent, child: SolverState) -> None:
        pass


@dataclass
class SearchStats:
    instances: int = 0
    nodes: int = 0
    branchings: Counter = field(default_factory=Counter)
    rule_counts: Counter = field(default_factory=Counter)
    kappa_stops: int = 0
    kappa_stop_failures: int = 0


@dataclass
class MaxResult:
    value: int
    tree: SpanningTree
    stats: SearchStats
    method: str  # which pipeline stage produced the answer


@dataclass
class DecisionResult:
    answer: bool
    certificate: SpanningTree | None
    stats: SearchStats
    method: str


@dataclass
class KernelResult:
    yes: bool
    tree: SpanningTree | None
    graph: Graph


def _validate_input(g: Graph) -> None:
    if not is_connected(g):
        raise DisconnectedGraphError("graph is not connected")
    if g.max_degree > 3:
        raise DegreeBoundError(f"maximum degree {g.max_degree} exceeds 3")


def _check_disabled(disabled) -> None:
    unknown = set(disabled) - OPTIONAL_RULES
    if unknown:
        raise PreconditionError(f"rules {sorted(unknown)} cannot be disabled")


def kernelize(g: Graph, k: int) -> KernelResult:
    """Either certify a tree with >= k internal vertices or confirm n <= 2k."""
    _validate_input(g)
    t = dfs_spanning_tree(g)
    if internal_count(t) >= k:
        return KernelResult(True, t, g)
    # t_2 + t_3 < k and t_1 = 2 + t_3, hence n = 2 + t_2 + 2 t_3 <= 2k
    assert g.n <= 2 * k, f"kernel bound violated: n={g.n}, k={k}"
    return KernelResult(False, None, g)


def _path_tree(g: Graph, path: list[int]) -> SpanningTree:
    return validate_spanning_tree(g, zip(path, path[1:]))


class _Search:
    def __init__(
        self,
        g: Graph,
        *,
        k: int | None = None,
        use_kappa_stop: bool = False,
        kappa_weights: KappaWeights = KappaWeights(),
        disabled=frozenset(),
        prune: bool = True,
        ceiling: int | None = None,
        tracer: Tracer | None = None,
        check: bool = False,
    ):
        _check_disabled(disabled)
        self.g = g
        self.k = k
        self.use_kappa_stop = use_kappa_stop
        self.kappa_weights = kappa_weights
        self.disabled = frozenset(disabled)
        self.prune = prune
        self.ceiling = g.n - 2 if ceiling is None else ceiling
        self.tracer = tracer
        self.check = check
        self.stats = SearchStats()
        self.best_value = -1
        self.best_tree: set[Edge] | None = None
        self.done = False

    # -- results ---------------------------------------------------------

    def _finish_leaf(self, s: SolverState, tree: set[Edge]) -> tuple[int, set[Edge]]:
        lifted = lift(s, tree)
        t = validate_spanning_tree(self.g, lifted)
        value = internal_count(t)
        deg = Counter()
        for u, v in tree:
            deg[u] += 1
            deg[v] += 1
        reduced = sum(1 for v in s.adj if deg[v] >= 2)
        assert value == reduced + s.offset, "lifting lost banked internal vertices"
        return value, lifted

    def _record(self, value: int, tree: set[Edge]) -> None:
        if value > self.best_value:
            self.best_value, self.best_tree = value, tree
        if self.k is not None and self.best_value >= self.k:
            self.done = True
        if self.best_value >= self.ceiling:
            self.done = True

    def _kappa_certificate(self, s: SolverState) -> set[Edge] | None:
        """Spanning tree of the working graph built as in the kappa-stop argument.

        Complete F arbitrarily, then repeatedly move a Z-leaf that hangs off a
        3-vertex onto its other neighbour when that neighbour is a leaf.
        """
        tree = complete_tree(s)
        if tree is None:
            return None
        Z = classify_kappa(s).Z
        deg = Counter()
        for u, v in tree:
            deg[u] += 1
            deg[v] += 1
        improved = True
        while improved:
            improved = False
            for v in sorted(Z):
                if deg[v] != 1:
                    continue
                u1, u2 = sorted(s.adj[v])
                if edge(v, u1) in tree:
                    u1, u2 = u2, u1
                if deg[u1] == 1 and deg[u2] == 3:
                    tree.remove(edge(v, u2))
                    tree.add(edge(v, u1))
                    deg[u2] -= 1
                    deg[u1] += 1
                    improved = True
        return tree

    # -- recursion -------------------------------------------------------

    def run(self, s: SolverState) -> None:
        self.stats.instances += 1
        self._node(s)

    def _node(self, s: SolverState) -> None:
        if self.done:
            return
        if not s.is_connected():
            return
        report = apply_all(s, self.disabled, self.tracer, self.check)
        self.stats.nodes += 1
        self.stats.rule_counts.update(report.rules_fired())
        if self.check:
            s.check_invariants(reduced=not self.disabled)
        if not s.is_connected():
            return
        bound = s.upper_bound()
        if self.prune and bound <= (self.best_value if self.k is None else self.k - 1):
            return
        if self.k is not None:
            if s.tree_internal() + s.offset >= self.k:
                tree = complete_tree(s)
                self._record(*self._finish_leaf(s, tree))
                return
            if self.use_kappa_stop:
                kap = kappa(s, w=self.kappa_weights)
                if kap <= 0:
                    self.stats.kappa_stops += 1
                    tree = self._kappa_certificate(s)
                    if tree is not None:
                        value, lifted = self._finish_leaf(s, tree)
                        if value >= self.k:
                            self._record(value, lifted)
                            return
                    self.stats.kappa_stop_failures += 1
        sel = select_branch_edge(s)
        if sel is None:
            if len(s.tree_vertices) == len(s.adj):
                self._record(*self._finish_leaf(s, set(s.tree)))
            return
        if self.tracer is not None:
            self.tracer.on_node(s)
        parent = self.tracer.measure(s) if self.tracer is not None else None
        self.stats.branchings[sel.case] += 1
        for child in branch_children(s, sel):
            if self.tracer is not None:
                self.tracer.on_branch(sel.case, parent, child)
            if self.check:
                child.check_invariants()
            self._node(child)
            if self.done:
                return


def solve_max(
    g: Graph,
    *,
    hp_precheck: bool = True,
    disabled=frozenset(),
    prune: bool = True,
    tracer: Tracer | None = None,
    check: bool = False,
) -> MaxResult:
    """Maximum internal spanning tree of a connected subcubic graph."""
    _validate_input(g)
    _check_disabled(disabled)
    stats = SearchStats()
    if g.n <= 2 or g.m == g.n - 1:
        t = validate_spanning_tree(g, g.edges)
        return MaxResult(internal_count(t), t, stats, "tree")
    ceiling = g.n - 2
    if hp_precheck:
        path = hamiltonian_path(g)
        if path is not None:
            return MaxResult(g.n - 2, _path_tree(g, path), stats, "hamiltonian")
        ceiling = g.n - 3
    search = _Search(g, disabled=disabled, prune=prune, ceiling=ceiling, tracer=tracer, check=check)
    for _, s in initial_states(g):
        if check:
            s.check_invariants()
        search.run(s)
        if search.done:
            break
    if search.best_tree is None:
        raise AssertionError("search found no spanning tree of a connected graph")
    t = validate_spanning_tree(g, search.best_tree)
    return MaxResult(search.best_value, t, search.stats, "branch")


def decide_k(
    g: Graph,
    k: int,
    *,
    use_kappa_stop: bool = True,
    hp_precheck: bool = True,
    kappa_weights: KappaWeights = KappaWeights(),
    disabled=frozenset(),
    prune: bool = True,
    tracer: Tracer | None = None,
    check: bool = False,
) -> DecisionResult:
    """Does ``g`` have a spanning tree with at least ``k`` internal vertices?"""
    _validate_input(g)
    _check_disabled(disabled)
    if k < 1:
        raise PreconditionError("k must be at least 1")
    stats = SearchStats()
    if g.n <= 2 or k > g.n - 2:
        return DecisionResult(False, None, stats, "trivial")
    kern = kernelize(g, k)
    if kern.yes:
        return DecisionResult(True, kern.tree, stats, "kernel")
    if g.m == g.n - 1:
        return DecisionResult(False, None, stats, "tree")
    if hp_precheck:
        path = hamiltonian_path(g)
        if path is not None:
            return DecisionResult(True, _path_tree(g, path), stats, "hamiltonian")
    search = _Search(
        g, k=k, use_kappa_stop=use_kappa_stop, kappa_weights=kappa_weights,
        disabled=disabled, prune=prune, tracer=tracer, check=check,
    )
    for _, s in initial_states(g, k):
        search.run(s)
        if search.done:
            break
    if search.best_value >= k:
        cert = validate_spanning_tree(g, search.best_tree)
        assert internal_count(cert) >= k
        return DecisionResult(True, cert, search.stats, "branch")
    return DecisionResult(False, None, search.stats, "branch")
