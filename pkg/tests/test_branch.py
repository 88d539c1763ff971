import random
from math import ceil

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mist.branch import (
    OPTIONAL_RULES,
    KappaWeights,
    SolverState,
    Tracer,
    apply_all,
    classify_kappa,
    classify_mu,
    decide_k,
    initial_states,
    kappa,
    kernelize,
    lift,
    mu,
    select_branch_edge,
    solve_max,
)
from mist.branch.rules import find
from mist.branch.search import _Search, branch_children
from mist.branch.state import complete_tree
from mist.errors import DegreeBoundError, DisconnectedGraphError, PreconditionError
from mist.graph import (
    Graph,
    complete_graph,
    cycle_graph,
    generate,
    internal_count,
    path_graph,
    petersen_graph,
    star_graph,
    validate_spanning_tree,
)
from mist.oracle import oracle_mist

from corpus import corpus, oracle_values


def state(g: Graph, tree=(), pending=(), k=None) -> SolverState:
    s = SolverState.initial(g, k)
    for u, v in list(tree) + list(pending):
        s.add_to_F(u, v)
    return s


def _internal(edges, vertices) -> int:
    deg = dict.fromkeys(vertices, 0)
    for u, v in edges:
        deg[u] += 1
        deg[v] += 1
    return sum(d >= 2 for d in deg.values())


# ------------------------------------------------------------------ rules

def test_rule_cycle():
    assert find(state(complete_graph(3), [(0, 1), (1, 2)]), "Cycle") == ("delete", 0, 2)


def test_rule_bridge():
    assert find(state(path_graph(3), [(0, 1)]), "Bridge") == ("add", 1, 2)
    assert find(state(cycle_graph(4), [(0, 1)]), "Bridge") is None


def test_rule_deg1():
    assert find(state(star_graph(3)), "Deg1") == ("add", 1, 0)


def test_rule_deg2():
    assert find(state(cycle_graph(5), [(0, 1)]), "Deg2") == ("add", 0, 4)


def test_rule_attach():
    g = Graph.from_edges(4, [(0, 1), (1, 2), (1, 3), (2, 3)])
    assert find(state(g, [(0, 1), (1, 2)]), "Attach") == ("delete", 1, 3)


def test_rule_attach2():
    g = Graph.from_edges(6, [(0, 1), (1, 2), (1, 3), (3, 4), (3, 5), (5, 2)])
    s = state(g, [(0, 1), (1, 2)], [(3, 4)])
    assert s.has_pt(3)
    assert find(s, "Attach2") == ("delete", 1, 3)


def test_rule_special():
    g = Graph.from_edges(6, [(0, 1), (1, 2), (2, 3), (3, 4), (3, 5), (5, 0)])
    s = state(g, [(0, 1)], [(3, 4)])
    assert find(s, "Special") == ("add", 1, 2)


def test_consdeg2_cascade_on_c5():
    s = state(cycle_graph(5), [(0, 1), (1, 2)])
    report = apply_all(s, check=True)
    assert report.rules_fired() == ["ConsDeg2", "ConsDeg2", "Cycle"]
    assert [a for _, a, _, _ in report.steps] == [
        ("contract", 4, 3, 2), ("contract", 2, 4, 0), ("delete", 0, 2)
    ]
    assert s.offset == 2
    tree = lift(s, complete_tree(s))
    assert internal_count(validate_spanning_tree(cycle_graph(5), tree)) == 3


def test_pending_cascade():
    g = Graph.from_edges(7, [(0, 1), (0, 5), (1, 5), (5, 6), (6, 2), (2, 3), (2, 4)])
    s = state(g, [(0, 1)], [(2, 3), (2, 4)])
    report = apply_all(s, check=True)
    assert report.rules_fired() == ["Pending", "Deg1", "Pending", "Deg1", "Deg2", "Cycle"]
    assert s.offset == 2
    tree = lift(s, complete_tree(s))
    assert internal_count(validate_spanning_tree(g, tree)) == 4


def test_decision_mode_bookkeeping():
    s = state(cycle_graph(5), [(0, 1), (1, 2)], k=3)
    report = apply_all(s)
    assert s.k == 1
    assert sum(dk for *_, dk, _ in report.steps) == -2
    assert all(dk == -doff for *_, dk, doff in report.steps)


def _random_states(g: Graph, seed: int, limit: int = 12):
    """States met along a random root-to-leaf descent of the search."""
    rng = random.Random(seed)
    starts = initial_states(g)
    _, s = starts[rng.randrange(len(starts))]
    out = []
    for _ in range(limit):
        if not s.is_connected():
            break
        apply_all(s)
        out.append(s.clone())
        sel = select_branch_edge(s)
        if sel is None:
            break
        s = rng.choice(branch_children(s, sel))
    return out


@settings(max_examples=60, deadline=None)
@given(n=st.integers(4, 14), seed=st.integers(0, 2**32))
def test_reduced_states_are_fixpoints_and_replayable(n, seed):
    g = generate("random_subcubic", n, seed)
    rng = random.Random(seed)
    starts = initial_states(g)
    _, s0 = starts[rng.randrange(len(starts))]
    s = s0.clone()
    report = apply_all(s, check=True)
    assert report.fixpoint
    assert len(apply_all(s)) == 0
    replayed = s0.clone()
    report.replay(replayed)
    assert replayed.snapshot() == s.snapshot()


@settings(max_examples=60, deadline=None)
@given(n=st.integers(4, 14), seed=st.integers(0, 2**32))
def test_invariants_along_random_descents(n, seed):
    g = generate("random_subcubic", n, seed)
    for s in _random_states(g, seed):
        s.check_invariants(reduced=s.is_connected())
        if s.is_connected():
            tree = complete_tree(s)
            assert tree is not None
            lifted = validate_spanning_tree(g, lift(s, tree))
            assert internal_count(lifted) == _internal(tree, s.adj) + s.offset


# --------------------------------------------------------------- branching

def test_select_4a():
    sel = select_branch_edge(state(cycle_graph(4), [(0, 1), (1, 2)]))
    assert (sel.case, sel.a, sel.b, sel.aux) == ("4a", 0, 3, (2,))


def test_select_4b():
    sel = select_branch_edge(state(cycle_graph(5), [(0, 1)]))
    assert (sel.case, sel.a, sel.b) == ("4b", 0, 4)


_SPIDER = [(0, 1), (1, 2), (1, 3), (2, 4), (2, 5), (3, 5), (3, 6), (5, 6)]


def test_select_4c_and_4d():
    g = Graph.from_edges(7, _SPIDER)
    sel = select_branch_edge(state(g, [(0, 1)], [(2, 4)]))
    assert (sel.case, sel.a, sel.b) == ("4c", 1, 2)
    sel = select_branch_edge(state(g, [(0, 1)]))
    assert (sel.case, sel.a, sel.b) == ("4d", 1, 2)


def test_select_5_and_children():
    g = Graph.from_edges(7, [(0, 1), (1, 6), (1, 2), (2, 3), (2, 4), (3, 4), (3, 5), (4, 5)])
    s = state(g, [(0, 1), (1, 6)])
    sel = select_branch_edge(s)
    assert (sel.case, sel.a, sel.b, sel.aux) == ("5", 1, 2, (3, 4))
    drop, keep_c, keep_x = branch_children(s, sel)
    assert 2 not in drop.adj[1]
    assert {(1, 2), (2, 3)} <= keep_c.tree and 4 not in keep_c.adj[2]
    assert {(1, 2), (2, 4)} <= keep_x.tree and 3 not in keep_x.adj[2]


def test_select_empty_boundary():
    s = state(path_graph(3), [(0, 1), (1, 2)])
    assert select_branch_edge(s) is None


def test_initial_states_count():
    for g in (petersen_graph(), cycle_graph(6), star_graph(3), generate("grid", 8)):
        states = initial_states(g)
        assert len(states) <= 4 * g.n
        for v, s in states:
            assert s.d_F(v) >= 2


# ------------------------------------------------------------------ solve

def test_solve_examples():
    assert solve_max(cycle_graph(6)).value == 4
    res = solve_max(petersen_graph(), hp_precheck=False, check=True)
    assert res.value == 8 and res.method == "branch"
    assert internal_count(res.tree) == 8
    assert solve_max(petersen_graph()).method == "hamiltonian"
    assert solve_max(star_graph(3)).value == 1
    assert solve_max(path_graph(2)).value == 0


def test_solve_non_hamiltonian_branch():
    # two triangles joined through a degree-3 hub: no Hamiltonian path
    g = Graph.from_edges(7, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (4, 5), (5, 6), (4, 6), (3, 6)])
    want = oracle_mist(g).value
    assert solve_max(g, check=True).value == want
    assert solve_max(g, hp_precheck=False, check=True).value == want


def test_solve_errors():
    with pytest.raises(DegreeBoundError):
        solve_max(complete_graph(5))
    with pytest.raises(DisconnectedGraphError):
        solve_max(Graph.from_edges(4, [(0, 1), (2, 3)]))
    with pytest.raises(PreconditionError):
        solve_max(petersen_graph(), disabled={"Cycle"})


def test_kernelize_examples():
    res = kernelize(cycle_graph(6), 4)
    assert res.yes and internal_count(res.tree) >= 4
    res = kernelize(star_graph(3), 2)
    assert not res.yes and res.graph.n <= 4


def test_decide_examples():
    assert decide_k(cycle_graph(5), 3).answer
    res = decide_k(cycle_graph(5), 4)
    assert not res.answer and res.method == "trivial"
    res = decide_k(petersen_graph(), 8, hp_precheck=False, check=True)
    assert res.answer and internal_count(res.certificate) >= 8
    assert not decide_k(star_graph(3), 2).answer
    with pytest.raises(PreconditionError):
        decide_k(cycle_graph(5), 0)


def test_disabled_optional_rules_stay_exact():
    graphs = corpus()[:120]
    values = oracle_values()[:120]
    for g, want in zip(graphs, values):
        res = solve_max(g, hp_precheck=False, disabled=OPTIONAL_RULES, check=True)
        assert res.value == want


@settings(max_examples=30, deadline=None)
@given(n=st.integers(4, 12), seed=st.integers(0, 2**32), perm_seed=st.integers(0, 2**32))
def test_relabelling_keeps_the_value(n, seed, perm_seed):
    g = generate("random_subcubic", n, seed)
    perm = list(range(n))
    random.Random(perm_seed).shuffle(perm)
    h = Graph.from_edges(n, [(perm[u], perm[v]) for u, v in g.edges])
    assert solve_max(g, hp_precheck=False).value == solve_max(h, hp_precheck=False).value


# --------------------------------------------------------------- measures

def test_measures_on_petersen_start():
    s = state(petersen_graph(), k=8)
    assert classify_mu(s).d3_0 == 10
    assert mu(s) == pytest.approx(10)
    assert kappa(s) == pytest.approx(8)


def test_measures_on_c5_path():
    s = state(cycle_graph(5), [(0, 1), (1, 2)], k=3)
    c = classify_mu(s)
    assert c.d2 == 2 and c.d3_0 == 0
    assert mu(s) == pytest.approx(2 * 0.3193)
    sets = classify_kappa(s)
    assert sets.Y == {1} and sets.Z == {3, 4} and not sets.X and not sets.W
    assert kappa(s) == pytest.approx(3 - 1 - 2 * 0.4189)
    assert kappa(s, simple=True) == pytest.approx(2)


def test_kappa_classes_with_pending_leaf():
    g = Graph.from_edges(6, [(0, 1), (1, 2), (2, 3), (3, 4), (3, 5), (5, 0)])
    sets = classify_kappa(state(g, [(0, 1)], [(3, 4)]))
    assert 3 in sets.W
    assert set().union(*sets) == set(range(6))
    assert sum(len(x) for x in sets) == 6


class _Collect(Tracer):
    def __init__(self):
        self.states = []

    def on_node(self, s):
        self.states.append(s.clone())


def test_kappa_certificate_meets_its_guarantee():
    w = KappaWeights()
    checked = 0
    for g, value in zip(corpus()[:150], oracle_values()[:150]):
        # a NO instance forces the search to expand every node
        k = value + 1
        if k > g.n - 2:
            continue
        tracer = _Collect()
        decide_k(g, k, hp_precheck=False, use_kappa_stop=False, tracer=tracer)
        search = _Search(g, k=k)
        for s in tracer.states:
            tree = search._kappa_certificate(s)
            assert tree is not None and s.tree <= tree
            c = classify_kappa(s)
            need = ceil(w.w1 * len(c.X) + len(c.Y) + w.w2 * len(c.Z) + w.w3 * len(c.W) - 1e-9)
            assert _internal(tree, s.adj) >= need
            checked += 1
    assert checked > 100
