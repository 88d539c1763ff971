"""Stage-wise dynamic program over (internal, leaf) vertex-set pairs.

A state ``(I, L)`` records that the graph contains a tree on ``I | L`` whose
internal vertices are exactly ``I``. States are grown one leaf at a time from
single edges, so stage ``i`` holds the states with ``|I| + |L| == i`` and
every stored vertex set is connected. Only reachable pairs are ever touched,
which is what makes the count depend on the number of connected sets.
"""

from __future__ import annotations

from .errors import DisconnectedGraphError, SizeLimitError
from .graph import Graph, SpanningTree, is_connected, validate_spanning_tree

DEFAULT_WIDTH = 24

State = tuple[int, int]  # (internal_mask, leaf_mask)


def _bits(x: int):
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


def _check(g: Graph, width: int) -> None:
    if g.n > width:
        raise SizeLimitError(f"n={g.n} exceeds the bitmask width {width}")
    if not is_connected(g):
        raise DisconnectedGraphError("graph is not connected")


def _successors(state: State, nbr: list[int]):
    internal, leaves = state
    covered = internal | leaves
    frontier = 0
    for v in _bits(covered):
        frontier |= nbr[v]
    frontier &= ~covered
    for x in _bits(frontier):
        bit = 1 << x
        if nbr[x] & internal:
            yield internal, leaves | bit
        for y in _bits(nbr[x] & leaves):
            ybit = 1 << y
            yield internal | ybit, (leaves ^ ybit) | bit


def stages(g: Graph, keep: bool = False, width: int = DEFAULT_WIDTH):
    """Run all stages; returns the final stage, plus every stage when ``keep``."""
    _check(g, width)
    nbr = g.neighbor_masks()
    current: set[State] = {(0, (1 << u) | (1 << v)) for u, v in g.edges}
    kept = [current] if keep else None
    total = len(current)
    for _ in range(3, g.n + 1):
        nxt: set[State] = set()
        for state in current:
            nxt.update(_successors(state, nbr))
        current = nxt
        total += len(current)
        if keep:
            kept.append(current)
    return current, kept, total


def dp_state_count(g: Graph, width: int = DEFAULT_WIDTH) -> int:
    """Number of distinct states stored across all stages."""
    if g.n < 2:
        _check(g, width)
        return 0
    return stages(g, width=width)[2]


def dp_solve(
    g: Graph, want_tree: bool = False, width: int = DEFAULT_WIDTH
) -> tuple[int, SpanningTree | None]:
    if g.n < 2:
        _check(g, width)
        return 0, validate_spanning_tree(g, ()) if want_tree else None
    final, kept, _ = stages(g, keep=want_tree, width=width)
    best = max(final, key=lambda s: (s[0].bit_count(), s))
    value = best[0].bit_count()
    if not want_tree:
        return value, None
    return value, validate_spanning_tree(g, _reconstruct(g, best, kept))


def _reconstruct(g: Graph, state: State, kept: list[set[State]]) -> list[tuple[int, int]]:
    """Undo leaf attachments until a single edge remains.

    At each step some leaf ``x`` is peeled off: either its neighbour in ``I``
    stays internal (the predecessor keeps ``I``), or a neighbour ``y`` that
    was a leaf before ``x`` arrived gets demoted back to ``L``.
    """
    nbr = g.neighbor_masks()
    edges = []
    internal, leaves = state
    for prev in reversed(kept[:-1]):
        for x in _bits(leaves):
            rest = leaves ^ (1 << x)
            hub = nbr[x] & internal
            if hub and (internal, rest) in prev:
                y = (hub & -hub).bit_length() - 1
                edges.append((x, y))
                leaves = rest
                break
            for y in _bits(hub):
                cand = (internal ^ (1 << y), rest | (1 << y))
                if cand in prev:
                    edges.append((x, y))
                    internal, leaves = cand
                    break
            else:
                continue
            break
        else:
            raise AssertionError("state has no predecessor; stage table is inconsistent")
    u, v = _bits(leaves)
    edges.append((u, v))
    return edges
