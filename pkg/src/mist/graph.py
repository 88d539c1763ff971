"""Simple undirected graphs, spanning trees, parsing and generators.

Vertices are always ``0..n-1`` internally. The DIMACS reader and writer
convert from and to 1-based indices at the boundary.
"""

from __future__ import annotations

import random
from collections import deque
from collections.abc import Iterable
from dataclasses import dataclass, field
from itertools import combinations
from math import ceil, isqrt

from .errors import (
    DisconnectedGraphError,
    GraphFormatError,
    InvalidGraphError,
    InvalidTreeError,
)

Edge = tuple[int, int]


def edge(u: int, v: int) -> Edge:
    """Canonical form of the unordered pair ``{u, v}``."""
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    n: int
    adjacency: tuple[tuple[int, ...], ...]
    edges: tuple[Edge, ...]

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> Graph:
        """Build a graph, rejecting self-loops, duplicates and bad indices."""
        if n < 0:
            raise InvalidGraphError(f"negative vertex count {n}")
        nbrs: list[set[int]] = [set() for _ in range(n)]
        seen: set[Edge] = set()
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise InvalidGraphError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise InvalidGraphError(f"self-loop at vertex {u}")
            e = edge(u, v)
            if e in seen:
                raise InvalidGraphError(f"duplicate edge {e}")
            seen.add(e)
            nbrs[u].add(v)
            nbrs[v].add(u)
        return cls(
            n=n,
            adjacency=tuple(tuple(sorted(s)) for s in nbrs),
            edges=tuple(sorted(seen)),
        )

    @property
    def m(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    @property
    def max_degree(self) -> int:
        return max((len(a) for a in self.adjacency), default=0)

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adjacency[u]

    def neighbor_masks(self) -> list[int]:
        return [sum(1 << u for u in a) for a in self.adjacency]

    def without_edge(self, e: Edge) -> Graph:
        return Graph.from_edges(self.n, (f for f in self.edges if f != e))

    def relabel(self, perm: list[int]) -> Graph:
        """Isomorphic copy with vertex ``v`` renamed to ``perm[v]``."""
        return Graph.from_edges(self.n, ((perm[u], perm[v]) for u, v in self.edges))


@dataclass(frozen=True)
class SpanningTree:
    host: Graph
    tree_edges: frozenset[Edge]
    degree_profile: tuple[int, ...] = field(compare=False)

    @property
    def n(self) -> int:
        return self.host.n

    def degrees(self) -> list[int]:
        deg = [0] * self.host.n
        for u, v in self.tree_edges:
            deg[u] += 1
            deg[v] += 1
        return deg

    def leaves(self) -> list[int]:
        return [v for v, d in enumerate(self.degrees()) if d == 1]

    def internal_vertices(self) -> list[int]:
        return [v for v, d in enumerate(self.degrees()) if d >= 2]

    def count(self, i: int) -> int:
        """Number of vertices with tree-degree exactly ``i``."""
        return self.degree_profile[i] if i < len(self.degree_profile) else 0


def internal_count(t: SpanningTree) -> int:
    return t.n - t.count(0) - t.count(1)


def check_prop1(t: SpanningTree) -> bool:
    """Leaf-count identity: ``2 + sum_{i>=3} (i-2) t_i == t_1``."""
    surplus = sum((i - 2) * c for i, c in enumerate(t.degree_profile) if i >= 3)
    return 2 + surplus == t.count(1)


def validate_spanning_tree(g: Graph, edges: Iterable[tuple[int, int]]) -> SpanningTree:
    es = frozenset(edge(u, v) for u, v in edges)
    for u, v in es:
        if not (0 <= u < g.n and 0 <= v < g.n) or not g.has_edge(u, v):
            raise InvalidTreeError("not_subgraph", f"({u}, {v}) is not an edge of the graph")
    if len(es) != max(g.n - 1, 0):
        raise InvalidTreeError(
            "wrong_cardinality", f"{len(es)} edges given, a spanning tree has {g.n - 1}"
        )
    parent = list(range(g.n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in sorted(es):
        ru, rv = find(u), find(v)
        if ru == rv:
            raise InvalidTreeError("cyclic", f"edge ({u}, {v}) closes a cycle")
        parent[ru] = rv
    # n-1 acyclic edges on n vertices always span; kept for completeness
    if g.n and len({find(v) for v in range(g.n)}) != 1:
        raise InvalidTreeError("not_spanning", "edges do not connect every vertex")
    deg = [0] * g.n
    for u, v in es:
        deg[u] += 1
        deg[v] += 1
    profile = [0] * (max(deg, default=0) + 1)
    for d in deg:
        profile[d] += 1
    return SpanningTree(host=g, tree_edges=es, degree_profile=tuple(profile))


# ---------------------------------------------------------------- structure


def components(g: Graph) -> list[list[int]]:
    seen = [False] * g.n
    out = []
    for s in range(g.n):
        if seen[s]:
            continue
        seen[s] = True
        comp = [s]
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in g.adjacency[u]:
                if not seen[w]:
                    seen[w] = True
                    comp.append(w)
                    queue.append(w)
        out.append(comp)
    return out


def is_connected(g: Graph) -> bool:
    return len(components(g)) <= 1


def bridges_of(adj: dict[int, Iterable[int]] | list[Iterable[int]]) -> set[Edge]:
    """Bridges of a graph given as vertex -> neighbours (dict or list).

    One iterative DFS computing discovery times and low-points.
    """
    items = adj.items() if isinstance(adj, dict) else enumerate(adj)
    nbrs = {v: tuple(ws) for v, ws in items}
    disc: dict[int, int] = {}
    low: dict[int, int] = {}
    result: set[Edge] = set()
    clock = 0
    for root in nbrs:
        if root in disc:
            continue
        disc[root] = low[root] = clock
        clock += 1
        stack = [(root, -1, iter(nbrs[root]))]
        while stack:
            u, parent, it = stack[-1]
            for w in it:
                if w == parent:
                    continue
                if w in disc:
                    low[u] = min(low[u], disc[w])
                else:
                    disc[w] = low[w] = clock
                    clock += 1
                    stack.append((w, u, iter(nbrs[w])))
                    break
            else:
                stack.pop()
                if parent >= 0:
                    low[parent] = min(low[parent], low[u])
                    if low[u] > disc[parent]:
                        result.add(edge(parent, u))
    return result


def bridges(g: Graph) -> set[Edge]:
    return bridges_of(g.adjacency)


def dfs_spanning_tree(g: Graph, root: int = 0) -> SpanningTree:
    """Depth-first spanning tree, deterministic given ``root``."""
    if not is_connected(g):
        raise DisconnectedGraphError("graph is not connected")
    if g.n == 0:
        return validate_spanning_tree(g, ())
    seen = {root}
    tree = []
    stack = [(root, iter(g.adjacency[root]))]
    while stack:
        u, it = stack[-1]
        for w in it:
            if w not in seen:
                seen.add(w)
                tree.append((u, w))
                stack.append((w, iter(g.adjacency[w])))
                break
        else:
            stack.pop()
    return validate_spanning_tree(g, tree)


# ------------------------------------------------------------------ parsing


def parse_graph(text: str, format: str = "auto") -> Graph:
    """Parse DIMACS (``p edge n m`` / ``e u v``) or a 0-indexed edge list."""
    if format == "auto":
        format = detect_format(text)
    if format == "dimacs":
        return _parse_dimacs(text)
    if format == "edgelist":
        return _parse_edgelist(text)
    raise ValueError(f"unknown graph format {format!r}")


def detect_format(text: str) -> str:
    for raw in text.splitlines():
        tok = raw.split()
        if not tok:
            continue
        return "dimacs" if tok[0] in ("c", "p", "e") else "edgelist"
    return "edgelist"


def _int(tok: str, lineno: int) -> int:
    try:
        return int(tok)
    except ValueError:
        raise GraphFormatError(f"expected an integer, got {tok!r}", lineno) from None


def _check_edge(u: int, v: int, n: int, seen: set[Edge], lineno: int, base: int) -> None:
    if u == v:
        raise GraphFormatError(f"self-loop at vertex {u + base}", lineno)
    if not (0 <= u < n and 0 <= v < n):
        raise GraphFormatError(f"vertex out of range: {u + base} {v + base}", lineno)
    e = edge(u, v)
    if e in seen:
        raise GraphFormatError(f"duplicate edge {u + base} {v + base}", lineno)
    seen.add(e)


def _parse_dimacs(text: str) -> Graph:
    n = m = None
    seen: set[Edge] = set()
    edges = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        tok = raw.split()
        if not tok or tok[0] == "c":
            continue
        if tok[0] == "p":
            if n is not None:
                raise GraphFormatError("second problem line", lineno)
            if len(tok) != 4 or tok[1] != "edge":
                raise GraphFormatError("expected 'p edge <n> <m>'", lineno)
            n, m = _int(tok[2], lineno), _int(tok[3], lineno)
            if n < 0 or m < 0:
                raise GraphFormatError("negative size in problem line", lineno)
        elif tok[0] == "e":
            if n is None:
                raise GraphFormatError("edge line before problem line", lineno)
            if len(tok) != 3:
                raise GraphFormatError("expected 'e <u> <v>'", lineno)
            u, v = _int(tok[1], lineno) - 1, _int(tok[2], lineno) - 1
            _check_edge(u, v, n, seen, lineno, base=1)
            edges.append((u, v))
        else:
            raise GraphFormatError(f"unknown line type {tok[0]!r}", lineno)
    if n is None:
        raise GraphFormatError("missing problem line 'p edge <n> <m>'")
    if len(edges) != m:
        raise GraphFormatError(f"problem line declares {m} edges, found {len(edges)}")
    return Graph.from_edges(n, edges)


def _parse_edgelist(text: str) -> Graph:
    edges = []
    seen: set[Edge] = set()
    for lineno, raw in enumerate(text.splitlines(), 1):
        tok = raw.split()
        if not tok or tok[0].startswith("#"):
            continue
        if len(tok) != 2:
            raise GraphFormatError("expected '<u> <v>'", lineno)
        u, v = _int(tok[0], lineno), _int(tok[1], lineno)
        if u < 0 or v < 0:
            raise GraphFormatError("negative vertex index", lineno)
        _check_edge(u, v, max(u, v) + 1, seen, lineno, base=0)
        edges.append((u, v))
    n = max((max(e) for e in edges), default=-1) + 1
    return Graph.from_edges(n, edges)


def format_graph(g: Graph, format: str = "dimacs") -> str:
    if format == "dimacs":
        lines = [f"p edge {g.n} {g.m}"]
        lines += [f"e {u + 1} {v + 1}" for u, v in g.edges]
    elif format == "edgelist":
        lines = [f"{u} {v}" for u, v in g.edges]
    else:
        raise ValueError(f"unknown graph format {format!r}")
    return "".join(line + "\n" for line in lines)


# --------------------------------------------------------------- generators

GENERATOR_KINDS = ("path", "cycle", "petersen", "grid", "random_subcubic", "random_degree_bounded")


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, ((i, i + 1) for i in range(n - 1)))


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise InvalidGraphError("a cycle needs at least 3 vertices")
    return Graph.from_edges(n, ((i, (i + 1) % n) for i in range(n)))


def petersen_graph() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.from_edges(10, outer + spokes + inner)


def grid_graph(n: int) -> Graph:
    """First ``n`` cells, row-major, of a near-square grid."""
    cols = ceil(n / max(1, isqrt(n)))
    edges = []
    for v in range(n):
        r, c = divmod(v, cols)
        if c + 1 < cols and v + 1 < n:
            edges.append((v, v + 1))
        if r > 0:
            edges.append((v - cols, v))
    return Graph.from_edges(n, edges)


def star_graph(leaves: int) -> Graph:
    return Graph.from_edges(leaves + 1, ((0, i) for i in range(1, leaves + 1)))


def complete_graph(n: int) -> Graph:
    return Graph.from_edges(n, combinations(range(n), 2))


def random_degree_bounded(
    n: int, seed: int, max_degree: int = 3, m: int | None = None
) -> Graph:
    """Random connected graph with all degrees at most ``max_degree``.

    A random tree is grown by attaching each new vertex to a uniformly chosen
    earlier vertex that still has spare degree; then random non-edges between
    unsaturated vertices are added until ``m`` edges exist or none remain.
    If ``m`` is omitted it is drawn uniformly from ``[n-1, floor(n*max_degree/2)]``.
    """
    if n < 1:
        raise InvalidGraphError("n must be at least 1")
    if max_degree < 2 and n > 2:
        raise InvalidGraphError(f"no connected graph on {n} vertices has max degree {max_degree}")
    if max_degree < 1 and n > 1:
        raise InvalidGraphError("max_degree 0 only admits a single vertex")
    cap = min(n * (n - 1) // 2, n * max_degree // 2)
    rng = random.Random(seed)
    if m is None:
        m = rng.randint(n - 1, cap) if n > 1 else 0
    if not (n - 1 <= m <= cap):
        raise InvalidGraphError(f"cannot realise {m} edges on {n} vertices with max degree {max_degree}")
    deg = [0] * n
    edges: set[Edge] = set()
    order = list(range(n))
    rng.shuffle(order)
    for i in range(1, n):
        v = order[i]
        parents = [u for u in order[:i] if deg[u] < max_degree]
        u = rng.choice(parents)
        edges.add(edge(u, v))
        deg[u] += 1
        deg[v] += 1
    while len(edges) < m:
        free = [
            e for e in combinations(range(n), 2)
            if deg[e[0]] < max_degree and deg[e[1]] < max_degree and e not in edges
        ]
        if not free:
            break
        u, v = rng.choice(free)
        edges.add((u, v))
        deg[u] += 1
        deg[v] += 1
    return Graph.from_edges(n, edges)


def random_subcubic(n: int, seed: int, m: int | None = None) -> Graph:
    return random_degree_bounded(n, seed, max_degree=3, m=m)


def generate(kind: str, n: int = 0, seed: int = 0, max_degree: int | None = None) -> Graph:
    if kind == "petersen":
        return petersen_graph()
    if n < 1:
        raise InvalidGraphError("n must be at least 1")
    if kind == "path":
        return path_graph(n)
    if kind == "cycle":
        return cycle_graph(n)
    if kind == "grid":
        return grid_graph(n)
    if kind == "random_subcubic":
        return random_subcubic(n, seed)
    if kind == "random_degree_bounded":
        return random_degree_bounded(n, seed, max_degree=4 if max_degree is None else max_degree)
    raise ValueError(f"unknown generator kind {kind!r}")
