"""Vertex classes and the two potential functions used to analyse the search.

``mu`` weighs vertices by degree and tree-degree and bounds the search in
terms of ``n``; ``kappa`` subtracts weighted counts of vertices that are
already (partly) certain to be internal from the parameter ``k``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from ..graph import edge
from .state import SolverState


@dataclass(frozen=True)
class MuWeights:
    w2: float = 0.3193
    w3_1: float = 0.6234
    w3_2: float = 0.3094
    w3_2star: float = 0.4144

    # Per-vertex measure drops for the status changes used in the case tuples.
    @property
    def d3_0(self) -> float:
        return 1 - self.w3_1

    d3_0star = d3_0

    @property
    def d3_1(self) -> float:
        return self.w3_1 - self.w3_2

    @property
    def d3_1star(self) -> float:
        return self.w3_1 - self.w3_2star

    @property
    def d3_2(self) -> float:
        return self.w3_2

    @property
    def d3_2star(self) -> float:
        return self.w3_2star

    @property
    def d2(self) -> float:
        return 1 - self.w2

    def tilde(self, i: int) -> float:
        """min of the plain and starred drop for tree-degree ``i``."""
        plain = (self.d3_0, self.d3_1, self.d3_2)[i]
        star = (self.d3_0star, self.d3_1star, self.d3_2star)[i]
        return min(plain, star)

    def m(self, ell: int) -> float:
        return min((self.d3_0, self.d3_1, self.d3_2)[: ell + 1])

    def tilde_m(self, ell: int) -> float:
        return min(self.tilde(j) for j in range(ell + 1))

    def deltas(self) -> dict[str, float]:
        return {
            "d3_0": self.d3_0, "d3_1": self.d3_1, "d3_1star": self.d3_1star,
            "d3_2": self.d3_2, "d3_2star": self.d3_2star, "d2": self.d2,
            "tilde3_1": self.tilde(1), "tilde3_2": self.tilde(2),
            "m1": self.m(1), "m2": self.m(2), "tilde_m1": self.tilde_m(1), "tilde_m2": self.tilde_m(2),
        }


@dataclass(frozen=True)
class KappaWeights:
    w1: float = 0.5485
    w2: float = 0.4189
    w3: float = 0.7712
    simple_w: float = 0.45346


class MuCounts(NamedTuple):
    d2: int
    d3_0: int
    d3_1: int
    d3_2_plain: int
    d3_2star: int
    d3_3: int


class KappaSets(NamedTuple):
    X: frozenset[int]
    Y: frozenset[int]
    Z: frozenset[int]
    W: frozenset[int]
    U: frozenset[int]


def mu_classes(s: SolverState) -> dict[str, set[int]]:
    out = {name: set() for name in MuCounts._fields}
    for v, ws in s.adj.items():
        d, t = len(ws), s.tdeg[v]
        if d == 2 and t == 0:
            out["d2"].add(v)
        elif d == 3:
            if t == 2:
                # the lone non-tree neighbour decides between the two D_3^2 weights
                (u,) = [w for w in ws if edge(v, w) not in s.tree]
                out["d3_2star" if len(s.adj[u]) == 2 else "d3_2_plain"].add(v)
            else:
                out[("d3_0", "d3_1", None, "d3_3")[t]].add(v)
    return out


def classify_mu(s: SolverState) -> MuCounts:
    cls = mu_classes(s)
    return MuCounts(*(len(cls[f]) for f in MuCounts._fields))


def mu(s: SolverState, w: MuWeights = MuWeights()) -> float:
    c = classify_mu(s)
    return (
        w.w2 * c.d2
        + c.d3_0
        + w.w3_1 * c.d3_1
        + w.w3_2 * c.d3_2_plain
        + w.w3_2star * c.d3_2star
    )


def classify_kappa(s: SolverState) -> KappaSets:
    X, Y = set(), set()
    for v, ws in s.adj.items():
        d, t = len(ws), s.tdeg[v]
        if d == 3 and t == 2:
            X.add(v)
        if d == t >= 2:
            Y.add(v)
    XY = X | Y
    W, Z = set(), set()
    for v, ws in s.adj.items():
        if v in XY or len(ws) < 2:
            continue
        if any(len(s.adj[u]) == 1 and s.d_F(u) == 1 for u in ws):
            W.add(v)
        elif len(ws) == 2 and not (ws & XY):
            Z.add(v)
    U = set(s.adj) - XY - W - Z
    return KappaSets(*(frozenset(x) for x in (X, Y, Z, W, U)))


def kappa(
    s: SolverState, k: int | None = None, w: KappaWeights = KappaWeights(), simple: bool = False
) -> float:
    """Parameterised measure; ``k`` defaults to the state's residual parameter."""
    if k is None:
        k = s.k
    c = classify_kappa(s)
    if simple:
        return k - w.simple_w * len(c.X) - len(c.Y)
    return k - w.w1 * len(c.X) - len(c.Y) - w.w2 * len(c.Z) - w.w3 * len(c.W)
