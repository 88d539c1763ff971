import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mist.errors import GraphFormatError, InvalidGraphError, InvalidTreeError
from mist.graph import (
    Graph,
    bridges,
    check_prop1,
    cycle_graph,
    dfs_spanning_tree,
    format_graph,
    generate,
    internal_count,
    is_connected,
    parse_graph,
    path_graph,
    petersen_graph,
    random_degree_bounded,
    star_graph,
    validate_spanning_tree,
)


def test_parse_dimacs_triangle():
    g = parse_graph("p edge 3 3\ne 1 2\ne 2 3\ne 1 3\n", "dimacs")
    assert (g.n, g.m) == (3, 3)
    assert g.edges == ((0, 1), (0, 2), (1, 2))


def test_parse_edgelist_path():
    g = parse_graph("0 1\n1 2\n", "edgelist")
    assert g == path_graph(3)


def test_parse_autodetect_and_comments():
    g = parse_graph("c a comment\np edge 2 1\ne 1 2\n")
    assert g.edges == ((0, 1),)
    g = parse_graph("# comment\n0 1\n")
    assert g.edges == ((0, 1),)


@pytest.mark.parametrize(
    "text, line",
    [
        ("p edge 2 1\ne 1 1\n", 2),  # self-loop
        ("p edge 3 2\ne 1 2\ne 2 1\n", 3),  # duplicate
        ("p edge 2 1\ne 1 3\n", 2),  # out of range
        ("p edge 2 1\ne 1 x\n", 2),  # syntax
        ("p edge 3 2\ne 1 2\n", None),  # edge count mismatch
        ("e 1 2\n", 1),  # edge before header
    ],
)
def test_parse_dimacs_errors(text, line):
    with pytest.raises(GraphFormatError) as info:
        parse_graph(text, "dimacs")
    if line is not None:
        assert info.value.line == line


def test_parse_edgelist_errors():
    with pytest.raises(GraphFormatError):
        parse_graph("0 0\n", "edgelist")
    with pytest.raises(GraphFormatError):
        parse_graph("0 1\n1 0\n", "edgelist")
    with pytest.raises(GraphFormatError):
        parse_graph("0 1 2\n", "edgelist")


def test_graph_rejects_bad_edges():
    with pytest.raises(InvalidGraphError):
        Graph.from_edges(2, [(0, 0)])
    with pytest.raises(InvalidGraphError):
        Graph.from_edges(2, [(0, 1), (1, 0)])
    with pytest.raises(InvalidGraphError):
        Graph.from_edges(2, [(0, 2)])


def test_graph_invariants():
    g = petersen_graph()
    assert sum(len(a) for a in g.adjacency) == 2 * g.m
    for u, v in g.edges:
        assert u < v and v in g.adjacency[u] and u in g.adjacency[v]


def test_bridges_examples():
    assert bridges(path_graph(3)) == {(0, 1), (1, 2)}
    assert bridges(cycle_graph(5)) == set()
    two_triangles = Graph.from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (2, 3)])
    assert bridges(two_triangles) == {(2, 3)}


def test_is_connected_examples():
    assert is_connected(cycle_graph(5))
    assert not is_connected(Graph.from_edges(4, [(0, 1), (2, 3)]))
    assert is_connected(Graph.from_edges(1, []))
    assert is_connected(Graph.from_edges(0, []))


def test_generate_examples():
    c6 = generate("cycle", 6, 0)
    assert (c6.n, c6.m) == (6, 6)
    p = generate("petersen")
    assert (p.n, p.m, p.max_degree) == (10, 15, 3)
    assert all(len(a) == 3 for a in p.adjacency)
    assert generate("random_subcubic", 12, 7) == generate("random_subcubic", 12, 7)
    assert generate("grid", 9).m == 12


def test_generate_unrealisable():
    with pytest.raises(InvalidGraphError):
        random_degree_bounded(2, 0, max_degree=3, m=2)
    with pytest.raises(ValueError):
        generate("nonsense", 5, 0)


@settings(max_examples=60, deadline=None)
@given(n=st.integers(1, 30), seed=st.integers(0, 2**64 - 1), d=st.integers(2, 5))
def test_random_generator_is_connected_and_bounded(n, seed, d):
    g = random_degree_bounded(n, seed, max_degree=d)
    assert is_connected(g)
    assert g.max_degree <= d
    assert g == random_degree_bounded(n, seed, max_degree=d)


def test_internal_count_examples():
    assert internal_count(validate_spanning_tree(path_graph(4), path_graph(4).edges)) == 2
    k13 = star_graph(3)
    assert internal_count(validate_spanning_tree(k13, k13.edges)) == 1
    spider = Graph.from_edges(7, [(0, 1), (1, 2), (0, 3), (3, 4), (0, 5), (5, 6)])
    assert internal_count(validate_spanning_tree(spider, spider.edges)) == 4


def test_leaf_identity_examples():
    p4 = path_graph(4)
    t = validate_spanning_tree(p4, p4.edges)
    assert t.count(1) == 2 and check_prop1(t)
    k13 = star_graph(3)
    t = validate_spanning_tree(k13, k13.edges)
    assert (t.count(1), t.count(3)) == (3, 1) and check_prop1(t)


@settings(max_examples=80, deadline=None)
@given(n=st.integers(2, 40), seed=st.integers(0, 2**32))
def test_leaf_identity_on_generated_trees(n, seed):
    g = generate("random_subcubic", n, seed)
    t = dfs_spanning_tree(g)
    assert check_prop1(t)
    assert sum(t.degree_profile) == n
    assert sum(i * c for i, c in enumerate(t.degree_profile)) == 2 * (n - 1)


def test_validate_spanning_tree_errors():
    c4 = cycle_graph(4)
    t = validate_spanning_tree(c4, [(0, 1), (1, 2), (2, 3)])
    assert internal_count(t) == 2
    with pytest.raises(InvalidTreeError) as info:
        validate_spanning_tree(c4, c4.edges)
    assert info.value.kind == "wrong_cardinality"
    with pytest.raises(InvalidTreeError) as info:
        validate_spanning_tree(c4, [(0, 2), (1, 2), (2, 3)])
    assert info.value.kind == "not_subgraph"
    p4 = path_graph(4)
    with pytest.raises(InvalidTreeError) as info:
        validate_spanning_tree(p4, [(0, 1), (2, 3)])
    assert info.value.kind in ("not_spanning", "wrong_cardinality")
    tri_tail = Graph.from_edges(4, [(0, 1), (1, 2), (0, 2), (2, 3)])
    with pytest.raises(InvalidTreeError) as info:
        validate_spanning_tree(tri_tail, [(0, 1), (1, 2), (0, 2)])
    assert info.value.kind == "cyclic"


@settings(max_examples=60, deadline=None)
@given(n=st.integers(2, 14), seed=st.integers(0, 2**32), d=st.integers(2, 4))
def test_bridges_match_connectivity(n, seed, d):
    g = random_degree_bounded(n, seed, max_degree=d)
    found = bridges(g)
    for e in g.edges:
        assert (e in found) == (not is_connected(g.without_edge(e)))


@settings(max_examples=60, deadline=None)
@given(n=st.integers(1, 20), seed=st.integers(0, 2**32), fmt=st.sampled_from(["dimacs", "edgelist"]))
def test_round_trip(n, seed, fmt):
    g = generate("random_degree_bounded", n, seed)
    text = format_graph(g, fmt)
    g2 = parse_graph(text, fmt)
    if fmt == "edgelist" and g.m == 0:
        return  # an edge list cannot express isolated vertices
    assert g2 == g
    assert parse_graph(format_graph(g2, fmt), fmt) == g2
