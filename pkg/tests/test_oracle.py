from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mist.errors import BudgetExceededError, DisconnectedGraphError, SizeLimitError
from mist.graph import (
    Graph,
    complete_graph,
    cycle_graph,
    generate,
    internal_count,
    path_graph,
    petersen_graph,
    star_graph,
)
from mist.oracle import (
    hamiltonian_path,
    has_hamiltonian_path,
    iter_spanning_trees,
    oracle_decide,
    oracle_mist,
)


def kirchhoff(g: Graph) -> int:
    """Number of spanning trees by the matrix-tree theorem."""
    n = g.n
    lap = [[Fraction(0)] * (n - 1) for _ in range(n - 1)]
    for v in range(1, n):
        lap[v - 1][v - 1] = Fraction(len(g.adjacency[v]))
        for w in g.adjacency[v]:
            if w:
                lap[v - 1][w - 1] -= 1
    det = Fraction(1)
    for i in range(n - 1):
        pivot = next((r for r in range(i, n - 1) if lap[r][i] != 0), None)
        if pivot is None:
            return 0
        if pivot != i:
            lap[i], lap[pivot] = lap[pivot], lap[i]
            det = -det
        det *= lap[i][i]
        for r in range(i + 1, n - 1):
            f = lap[r][i] / lap[i][i]
            for c in range(i, n - 1):
                lap[r][c] -= f * lap[i][c]
    return int(det)


def test_oracle_examples():
    assert oracle_mist(cycle_graph(5)).value == 3
    assert oracle_mist(complete_graph(4)).value == 2
    assert oracle_mist(petersen_graph()).value == 8


def test_oracle_witness_is_valid():
    for g in (cycle_graph(5), petersen_graph(), star_graph(3)):
        res = oracle_mist(g)
        assert res.witness.host == g
        assert internal_count(res.witness) == res.value


def test_oracle_tiny_graphs():
    assert oracle_mist(path_graph(2)).value == 0
    assert oracle_mist(path_graph(1)).value == 0


def test_decide_examples():
    assert oracle_decide(cycle_graph(5), 3)
    assert not oracle_decide(cycle_graph(5), 4)
    assert not oracle_decide(star_graph(3), 2)
    assert oracle_decide(petersen_graph(), 8)


def test_oracle_errors():
    with pytest.raises(DisconnectedGraphError):
        oracle_mist(Graph.from_edges(4, [(0, 1), (2, 3)]))
    with pytest.raises(BudgetExceededError):
        oracle_mist(petersen_graph(), limit=10)


@pytest.mark.parametrize("g", [petersen_graph(), complete_graph(5), cycle_graph(7), generate("grid", 9)])
def test_enumeration_count_matches_matrix_tree(g):
    assert sum(1 for _ in iter_spanning_trees(g)) == kirchhoff(g)


@settings(max_examples=40, deadline=None)
@given(n=st.integers(2, 9), seed=st.integers(0, 2**32))
def test_enumeration_count_random(n, seed):
    g = generate("random_degree_bounded", n, seed)
    trees = list(iter_spanning_trees(g))
    assert len(trees) == len(set(trees)) == kirchhoff(g)


def test_hamiltonian_examples():
    assert has_hamiltonian_path(path_graph(6))
    assert not has_hamiltonian_path(star_graph(3))
    p = petersen_graph()
    path = hamiltonian_path(p)
    assert sorted(path) == list(range(10))
    assert all(p.has_edge(a, b) for a, b in zip(path, path[1:]))


def test_hamiltonian_width_limit():
    with pytest.raises(SizeLimitError):
        has_hamiltonian_path(cycle_graph(30))


def _brute_hp(g: Graph) -> bool:
    from itertools import permutations

    return any(all(g.has_edge(a, b) for a, b in zip(p, p[1:])) for p in permutations(range(g.n)))


@settings(max_examples=40, deadline=None)
@given(n=st.integers(1, 7), seed=st.integers(0, 2**32))
def test_hamiltonian_matches_permutations(n, seed):
    g = generate("random_degree_bounded", n, seed)
    assert has_hamiltonian_path(g) == _brute_hp(g)


@settings(max_examples=40, deadline=None)
@given(n=st.integers(3, 11), seed=st.integers(0, 2**32))
def test_value_is_n_minus_2_iff_hamiltonian(n, seed):
    g = generate("random_subcubic", n, seed)
    value = oracle_mist(g).value
    assert value <= n - 2
    assert (value == n - 2) == has_hamiltonian_path(g)


@settings(max_examples=30, deadline=None)
@given(n=st.integers(3, 10), seed=st.integers(0, 2**32))
def test_optimum_with_independent_leaves_exists(n, seed):
    g = generate("random_subcubic", n, seed)
    res = oracle_mist(g)
    if res.value == n - 2:
        return
    found = False
    for tree in iter_spanning_trees(g):
        deg = [0] * n
        for u, v in tree:
            deg[u] += 1
            deg[v] += 1
        if sum(d >= 2 for d in deg) != res.value:
            continue
        leaves = [v for v in range(n) if deg[v] == 1]
        if not any(g.has_edge(a, b) for a, b in combinations(leaves, 2)):
            found = True
            break
    assert found


@settings(max_examples=30, deadline=None)
@given(n=st.integers(2, 10), seed=st.integers(0, 2**32))
def test_decide_is_monotone(n, seed):
    g = generate("random_subcubic", n, seed)
    answers = [oracle_decide(g, k) for k in range(0, n + 1)]
    assert answers == sorted(answers, reverse=True)
    assert answers.count(True) == oracle_mist(g).value + 1
