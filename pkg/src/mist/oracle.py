"""Brute-force ground truth for the fast solvers.

Nothing in here shares code with the dynamic program or the branching
solver; the two searches below are deliberately naive.
"""

from __future__ import annotations

from collections.abc import Iterator
from dataclasses import dataclass

from .errors import BudgetExceededError, DisconnectedGraphError, SizeLimitError
from .graph import Edge, Graph, SpanningTree, edge, is_connected, validate_spanning_tree

DEFAULT_BUDGET = 10**8
DEFAULT_WIDTH = 24


@dataclass(frozen=True)
class OracleResult:
    value: int
    witness: SpanningTree
    trees_enumerated: int


class _EdgeSearch:
    """Include/exclude recursion over the edge list.

    Included edges must stay acyclic (rollback union-find); an edge may only
    be excluded if it is not a bridge of the graph minus the edges excluded
    so far, so every leaf of the recursion is a spanning tree.
    """

    def __init__(self, g: Graph, budget: int):
        self.g = g
        self.budget = budget
        self.nodes = 0
        self.trees = 0
        self.parent = list(range(g.n))
        self.size = [1] * g.n
        self.excluded: set[Edge] = set()
        self.included: list[Edge] = []
        self.inc_deg = [0] * g.n
        self.open_deg = [g.degree(v) for v in range(g.n)]

    def _find(self, x: int) -> int:
        while self.parent[x] != x:
            x = self.parent[x]
        return x

    def _still_connected_without(self, e: Edge) -> bool:
        u, v = e
        adj = self.g.adjacency
        seen = {u}
        stack = [u]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                f = edge(x, y)
                if f == e or f in self.excluded or y in seen:
                    continue
                if y == v:
                    return True
                seen.add(y)
                stack.append(y)
        return False

    def upper_bound(self) -> int:
        """Vertices that can still reach tree-degree 2."""
        n = self.g.n
        cand = sum(1 for v in range(n) if self.inc_deg[v] + self.open_deg[v] >= 2)
        return min(cand, n - 2)

    def run(self, prune=None) -> Iterator[tuple[Edge, ...]]:
        """Yield spanning trees. ``prune()`` returning True cuts the subtree."""
        yield from self._rec(0, prune)

    def _rec(self, i: int, prune) -> Iterator[tuple[Edge, ...]]:
        self.nodes += 1
        if self.nodes > self.budget:
            raise BudgetExceededError(f"oracle exceeded its budget of {self.budget} nodes")
        g = self.g
        if len(self.included) == g.n - 1:
            self.trees += 1
            yield tuple(self.included)
            return
        if i == g.m:
            return
        if prune is not None and prune():
            return
        e = g.edges[i]
        u, v = e
        self.open_deg[u] -= 1
        self.open_deg[v] -= 1
        ru, rv = self._find(u), self._find(v)
        if ru != rv:
            if self.size[ru] < self.size[rv]:
                ru, rv = rv, ru
            self.parent[rv] = ru
            self.size[ru] += self.size[rv]
            self.included.append(e)
            self.inc_deg[u] += 1
            self.inc_deg[v] += 1
            yield from self._rec(i + 1, prune)
            self.inc_deg[u] -= 1
            self.inc_deg[v] -= 1
            self.included.pop()
            self.size[ru] -= self.size[rv]
            self.parent[rv] = rv
        if self._still_connected_without(e):
            self.excluded.add(e)
            yield from self._rec(i + 1, prune)
            self.excluded.discard(e)
        self.open_deg[u] += 1
        self.open_deg[v] += 1


def _tree_internal(n: int, tree: tuple[Edge, ...]) -> int:
    deg = [0] * n
    for u, v in tree:
        deg[u] += 1
        deg[v] += 1
    return sum(1 for d in deg if d >= 2)


def _require_connected(g: Graph) -> None:
    if not is_connected(g):
        raise DisconnectedGraphError("graph is not connected")


def iter_spanning_trees(g: Graph, budget: int = DEFAULT_BUDGET) -> Iterator[frozenset[Edge]]:
    """Every spanning tree of ``g``, each exactly once."""
    _require_connected(g)
    if g.n <= 1:
        yield frozenset()
        return
    for tree in _EdgeSearch(g, budget).run():
        yield frozenset(tree)


def oracle_mist(g: Graph, limit: int = DEFAULT_BUDGET) -> OracleResult:
    """Maximum internal count over all spanning trees of ``g``.

    Subtrees of the recursion that cannot beat the incumbent are skipped;
    the bound only counts vertices whose included plus undecided degree is
    at least two, so the maximum is still exact.
    """
    _require_connected(g)
    if g.n <= 2:
        return OracleResult(0, validate_spanning_tree(g, g.edges[: max(g.n - 1, 0)]), 1)
    search = _EdgeSearch(g, limit)
    best_val, best_tree = -1, ()
    ceiling = g.n - 2

    def prune() -> bool:
        return best_val >= ceiling or search.upper_bound() <= best_val

    for tree in search.run(prune):
        val = _tree_internal(g.n, tree)
        if val > best_val:
            best_val, best_tree = val, tree
    return OracleResult(best_val, validate_spanning_tree(g, best_tree), search.trees)


def oracle_decide(g: Graph, k: int, limit: int = DEFAULT_BUDGET) -> bool:
    """Whether some spanning tree has at least ``k`` internal vertices."""
    _require_connected(g)
    if k <= 0:
        return True
    if g.n <= 2:
        return False
    search = _EdgeSearch(g, limit)
    for tree in search.run(lambda: search.upper_bound() < k):
        if _tree_internal(g.n, tree) >= k:
            return True
    return False


# ------------------------------------------------------ Hamiltonian paths


def hamiltonian_path(g: Graph, width: int = DEFAULT_WIDTH) -> list[int] | None:
    """A Hamiltonian path as a vertex sequence, or None.

    Held-Karp over (visited set, end vertex), stored as one end-vertex bitmask
    per reachable visited set and processed layer by layer.
    """
    n = g.n
    if n > width:
        raise SizeLimitError(f"n={n} exceeds the bitmask width {width}")
    if n == 0:
        return None
    if n == 1:
        return [0]
    nbr = g.neighbor_masks()
    layers: list[dict[int, int]] = [{1 << v: 1 << v for v in range(n)}]
    for _ in range(n - 1):
        nxt: dict[int, int] = {}
        for mask, ends in layers[-1].items():
            while ends:
                low = ends & -ends
                ends ^= low
                ext = nbr[low.bit_length() - 1] & ~mask
                while ext:
                    b = ext & -ext
                    ext ^= b
                    key = mask | b
                    nxt[key] = nxt.get(key, 0) | b
        if not nxt:
            return None
        layers.append(nxt)
    full = (1 << n) - 1
    ends = layers[-1].get(full, 0)
    if not ends:
        return None
    v = (ends & -ends).bit_length() - 1
    path = [v]
    mask = full
    for layer in reversed(layers[:-1]):
        mask ^= 1 << v
        cand = layer[mask] & nbr[v]
        v = (cand & -cand).bit_length() - 1
        path.append(v)
    path.reverse()
    return path


def has_hamiltonian_path(g: Graph, width: int = DEFAULT_WIDTH) -> bool:
    return hamiltonian_path(g, width) is not None
