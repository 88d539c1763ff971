"""Mutable search state for the subcubic branch-and-reduce solver.

The committed edge set ``F`` is split into a connected partial tree ``T`` and
pending tree edges (pt-edges): committed edges hanging off a degree-1 vertex
whose other end is not yet in ``T``. A pt-edge is stored from its owner (the
endpoint outside ``T`` that is not the degree-1 leaf).

Two operations shrink the working graph and are recorded in ``log`` so that a
spanning tree of the reduced graph can be lifted back to the input graph:

``("pending", owner, leaves)``
    The pt-leaves of ``owner`` were removed; they are re-attached on lifting.
``("contract", v, w, z)``
    The path ``v-w-z`` (``w`` and ``z`` of degree 2) was replaced by ``{v, z}``.
    If ``{v, z}`` was already an edge (a triangle), ``z`` is left pendant on
    ``v`` and every spanning tree keeps ``{v, z}``.

Each of these banks exactly one internal vertex, tracked by ``offset``; in
decision mode the residual parameter ``k`` drops by one at the same time.
"""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass, field

from ..errors import DegreeBoundError
from ..graph import Edge, Graph, edge


@dataclass
class SolverState:
    original: Graph
    adj: dict[int, set[int]]
    tree: set[Edge] = field(default_factory=set)
    tdeg: Counter = field(default_factory=Counter)
    tree_vertices: set[int] = field(default_factory=set)
    pt_owner: dict[int, set[int]] = field(default_factory=dict)
    pt_leaf: dict[int, int] = field(default_factory=dict)
    offset: int = 0
    k: int | None = None
    log: list[tuple] = field(default_factory=list)

    @classmethod
    def initial(cls, g: Graph, k: int | None = None) -> SolverState:
        if g.max_degree > 3:
            raise DegreeBoundError(f"maximum degree {g.max_degree} exceeds 3")
        return cls(original=g, adj={v: set(g.adjacency[v]) for v in range(g.n)}, k=k)

    def clone(self) -> SolverState:
        return SolverState(
            original=self.original,
            adj={v: set(ws) for v, ws in self.adj.items()},
            tree=set(self.tree),
            tdeg=Counter(self.tdeg),
            tree_vertices=set(self.tree_vertices),
            pt_owner={v: set(ls) for v, ls in self.pt_owner.items()},
            pt_leaf=dict(self.pt_leaf),
            offset=self.offset,
            k=self.k,
            log=list(self.log),
        )

    def snapshot(self) -> tuple:
        """Hashable summary used to compare states for equality."""
        return (
            tuple(sorted((v, tuple(sorted(ws))) for v, ws in self.adj.items())),
            tuple(sorted(self.tree)),
            tuple(sorted(self.pt_leaf.items())),
            self.offset,
            self.k,
            tuple(self.log),
        )

    # ----------------------------------------------------------- queries

    def deg(self, v: int) -> int:
        return len(self.adj[v])

    def d_T(self, v: int) -> int:
        return self.tdeg[v]

    def d_P(self, v: int) -> int:
        return len(self.pt_owner.get(v, ())) + (v in self.pt_leaf)

    def d_F(self, v: int) -> int:
        return self.tdeg[v] + self.d_P(v)

    def in_T(self, v: int) -> bool:
        return v in self.tree_vertices

    def in_VF(self, v: int) -> bool:
        return v in self.tree_vertices or v in self.pt_owner or v in self.pt_leaf

    def has_pt(self, v: int) -> bool:
        """True iff ``v`` owns at least one pt-edge."""
        return v in self.pt_owner

    def pending_edges(self) -> set[Edge]:
        return {edge(leaf, owner) for leaf, owner in self.pt_leaf.items()}

    def in_F(self, u: int, v: int) -> bool:
        return edge(u, v) in self.tree or self.pt_leaf.get(u) == v or self.pt_leaf.get(v) == u

    def edges(self) -> list[Edge]:
        return sorted(edge(u, v) for u, ws in self.adj.items() for v in ws if u < v)

    def boundary(self) -> list[tuple[int, int]]:
        """Non-tree edges with an end in V(T), as (tree end, other end).

        Sorted by canonical edge; an edge with both ends in V(T) appears once,
        oriented from its smaller endpoint.
        """
        out = {}
        for a in self.tree_vertices:
            for b in self.adj[a]:
                e = edge(a, b)
                if e not in self.tree and e not in out:
                    out[e] = (a, b) if b not in self.tree_vertices else e
        return [out[e] for e in sorted(out)]

    def boundary_vertices(self) -> set[int]:
        return {a for a in self.tree_vertices if self.tdeg[a] < len(self.adj[a])}

    def tree_internal(self) -> int:
        return sum(1 for v in self.tree_vertices if self.tdeg[v] >= 2)

    def is_connected(self) -> bool:
        if not self.adj:
            return True
        start = next(iter(self.adj))
        seen = {start}
        queue = deque([start])
        while queue:
            u = queue.popleft()
            for w in self.adj[u]:
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
        return len(seen) == len(self.adj)

    def upper_bound(self) -> int:
        """Cap on the internal count of any spanning tree extending this state."""
        n = len(self.adj)
        forced_leaves = sum(1 for ws in self.adj.values() if len(ws) == 1)
        return self.offset + n - max(2, forced_leaves)

    # --------------------------------------------------------- mutations

    def add_to_F(self, u: int, v: int) -> None:
        """Commit ``{u, v}``; it joins T if it touches T, else becomes a pt-edge."""
        e = edge(u, v)
        assert v in self.adj[u], f"{e} is not an edge"
        assert not self.in_F(u, v), f"{e} is already committed"
        tu, tv = u in self.tree_vertices, v in self.tree_vertices
        if tu and tv:
            raise AssertionError(f"adding {e} would close a cycle in T")
        if tu or tv or not self.tree:
            self.tree.add(e)
            self.tdeg[u] += 1
            self.tdeg[v] += 1
            for x in (u, v):
                if x not in self.tree_vertices:
                    self.tree_vertices.add(x)
                    self._absorb_pending(x)
            return
        if len(self.adj[u]) == 1 and u not in self.pt_leaf:
            leaf, owner = u, v
        elif len(self.adj[v]) == 1 and v not in self.pt_leaf:
            leaf, owner = v, u
        else:
            raise AssertionError(f"{e} is neither incident to T nor pendant")
        assert owner not in self.pt_leaf, "pt-edge would form an isolated component"
        self.pt_owner.setdefault(owner, set()).add(leaf)
        self.pt_leaf[leaf] = owner

    def _absorb_pending(self, x: int) -> None:
        for leaf in sorted(self.pt_owner.pop(x, ())):
            del self.pt_leaf[leaf]
            self.tree.add(edge(x, leaf))
            self.tdeg[x] += 1
            self.tdeg[leaf] += 1
            self.tree_vertices.add(leaf)

    def delete_edge(self, u: int, v: int) -> None:
        assert not self.in_F(u, v), f"cannot delete committed edge {edge(u, v)}"
        self.adj[u].remove(v)
        self.adj[v].remove(u)

    def remove_pending(self, owner: int) -> None:
        leaves = sorted(self.pt_owner.pop(owner))
        for leaf in leaves:
            del self.pt_leaf[leaf]
            self.adj[owner].remove(leaf)
            del self.adj[leaf]
        self.log.append(("pending", owner, tuple(leaves)))
        self._bank()

    def contract(self, v: int, w: int, z: int) -> None:
        """Drop ``w`` and join ``v`` to ``z``; the edge may already exist."""
        self.adj[v].remove(w)
        self.adj[z].remove(w)
        del self.adj[w]
        self.adj[v].add(z)
        self.adj[z].add(v)
        self.log.append(("contract", v, w, z))
        self._bank()

    def _bank(self) -> None:
        self.offset += 1
        if self.k is not None:
            self.k -= 1

    # ------------------------------------------------------------ checks

    def check_invariants(self, reduced: bool = False) -> None:
        """Raise AssertionError if the structural invariants are broken."""
        for v, ws in self.adj.items():
            assert len(ws) <= 3, f"vertex {v} has degree {len(ws)}"
            for w in ws:
                assert v in self.adj[w], "adjacency is not symmetric"
        counts = Counter()
        for u, v in self.tree:
            assert v in self.adj[u], f"tree edge {(u, v)} missing from graph"
            counts[u] += 1
            counts[v] += 1
        assert +counts == +self.tdeg, "tree-degree cache is stale"
        assert set(counts) == self.tree_vertices or not self.tree
        if self.tree:
            assert len(self.tree) == len(self.tree_vertices) - 1, "T is not a tree"
            start = next(iter(self.tree_vertices))
            seen = {start}
            stack = [start]
            while stack:
                x = stack.pop()
                for y in self.adj[x]:
                    if y not in seen and edge(x, y) in self.tree:
                        seen.add(y)
                        stack.append(y)
            assert seen == self.tree_vertices, "T is not connected"
        for leaf, owner in self.pt_leaf.items():
            assert leaf in self.pt_owner.get(owner, ()), "pt caches disagree"
            assert len(self.adj[leaf]) == 1 and owner in self.adj[leaf], "pt-leaf must have degree 1"
            assert owner not in self.tree_vertices and leaf not in self.tree_vertices
        assert sum(len(ls) for ls in self.pt_owner.values()) == len(self.pt_leaf)
        if reduced:
            for a in self.boundary_vertices():
                assert len(self.adj[a]) == 3, f"boundary vertex {a} has degree {len(self.adj[a])}"


def lift(state: SolverState, tree_edges: set[Edge]) -> set[Edge]:
    """Turn a spanning tree of the working graph into one of the input graph."""
    tree = set(tree_edges)
    deg = Counter()
    for u, v in tree:
        deg[u] += 1
        deg[v] += 1
    for entry in reversed(state.log):
        if entry[0] == "pending":
            _, owner, leaves = entry
            for leaf in leaves:
                tree.add(edge(owner, leaf))
                deg[owner] += 1
                deg[leaf] += 1
        else:
            _, v, w, z = entry
            e = edge(v, z)
            if e in tree:
                tree.remove(e)
                tree.add(edge(v, w))
                tree.add(edge(w, z))
                deg[w] = 2
            else:
                hook = z if deg[z] == 1 or deg[v] != 1 else v
                tree.add(edge(w, hook))
                deg[w] = 1
                deg[hook] += 1
    return tree


def complete_tree(state: SolverState) -> set[Edge] | None:
    """Extend F greedily to a spanning tree of the working graph."""
    parent = {v: v for v in state.adj}

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    chosen = set()
    forced = state.tree | state.pending_edges()
    for u, v in sorted(forced):
        ru, rv = find(u), find(v)
        if ru == rv:
            raise AssertionError("committed edges contain a cycle")
        parent[ru] = rv
        chosen.add((u, v))
    for u, v in state.edges():
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
            chosen.add((u, v))
    if len(chosen) != len(state.adj) - 1:
        return None
    return chosen
