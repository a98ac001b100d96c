"""Structured graph-class models: interval representations and convex /
biconvex bipartite orderings.

Models are inputs, not computed: class recognition is out of scope, so a
caller provides the interval endpoints or the orderings and we validate
the defining consecutiveness properties.  Derived graphs use dense ids;
for bipartite models the ordered A side occupies 0..na-1 and the B side
na..na+nb-1.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graphs import Graph, GraphError, VertexSet, is_connected


@dataclass(frozen=True)
class IntervalModel:
    """One closed integer interval [left, right] per vertex."""

    lefts: tuple[int, ...]
    rights: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.lefts) != len(self.rights):
            raise GraphError("bad-model", "interval endpoint counts differ")
        for v, (a, b) in enumerate(zip(self.lefts, self.rights)):
            if a > b:
                raise GraphError("bad-model", f"interval {v} has left > right")

    @property
    def n(self) -> int:
        return len(self.lefts)

    def derive_graph(self) -> Graph:
        edges = [
            (u, v)
            for u in range(self.n)
            for v in range(u + 1, self.n)
            if max(self.lefts[u], self.lefts[v]) <= min(self.rights[u], self.rights[v])
        ]
        return Graph(self.n, edges)


@dataclass(frozen=True)
class ConvexModel:
    """Bipartite model where each B-vertex sees a contiguous A-index window.

    windows[j] = (lo, hi) means b_j is adjacent to a_lo..a_hi (0-based,
    inclusive); the A ordering is the identity on indices.
    """

    na: int
    nb: int
    windows: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        if self.na < 1 or self.nb < 1:
            raise GraphError("bad-model", "empty side")
        if len(self.windows) != self.nb:
            raise GraphError("bad-model", "window count differs from nb")
        for j, (lo, hi) in enumerate(self.windows):
            if not (0 <= lo <= hi < self.na):
                raise GraphError("bad-model", f"window {j} = ({lo}, {hi}) out of range")

    @property
    def n(self) -> int:
        return self.na + self.nb

    def a_id(self, i: int) -> int:
        return i

    def b_id(self, j: int) -> int:
        return self.na + j

    def derive_graph(self) -> Graph:
        edges = [
            (i, self.na + j)
            for j, (lo, hi) in enumerate(self.windows)
            for i in range(lo, hi + 1)
        ]
        return Graph(self.n, edges)

    def b_neighbors_of_a(self, i: int) -> list[int]:
        return [j for j, (lo, hi) in enumerate(self.windows) if lo <= i <= hi]


@dataclass(frozen=True)
class BiconvexModel(ConvexModel):
    """Convex model whose A-side neighborhoods are also contiguous in B order."""

    def __post_init__(self) -> None:
        super().__post_init__()
        for i in range(self.na):
            js = self.b_neighbors_of_a(i)
            if js and js != list(range(js[0], js[-1] + 1)):
                raise GraphError(
                    "bad-model", f"A-vertex {i} has a non-contiguous B-neighborhood"
                )


@dataclass(frozen=True)
class PathDecomposition:
    bags: tuple[VertexSet, ...]

    @property
    def width(self) -> int:
        return max(len(b) for b in self.bags) - 1

    def check(self, g: Graph) -> None:
        """Raise unless all three path-decomposition axioms hold for g."""
        covered: set[int] = set()
        for b in self.bags:
            covered |= b
        if covered != set(range(g.n)):
            raise GraphError("bad-decomposition", "bags do not cover all vertices")
        for u, v in g.edges():
            if not any(u in b and v in b for b in self.bags):
                raise GraphError("bad-decomposition", f"edge ({u}, {v}) in no bag")
        for v in range(g.n):
            idxs = [i for i, b in enumerate(self.bags) if v in b]
            if idxs != list(range(idxs[0], idxs[-1] + 1)):
                raise GraphError("bad-decomposition", f"vertex {v} occurs non-contiguously")


def interval_path_decomposition(m: IntervalModel) -> PathDecomposition:
    """Maximal cliques of the interval graph in sweep order.

    One candidate bag per distinct right endpoint r, holding every interval
    covering r; bags contained in the previously kept bag are dropped, which
    leaves exactly the maximal cliques.  Bags being maximal cliques gives
    minimum width, and every bag separates what lies left of it from what
    lies right.
    """
    g = m.derive_graph()
    if not is_connected(g):
        raise GraphError("disconnected")
    bags: list[VertexSet] = []
    for r in sorted(set(m.rights)):
        bag = frozenset(
            v for v in range(m.n) if m.lefts[v] <= r <= m.rights[v]
        )
        if bags and bag <= bags[-1]:
            continue
        bags.append(bag)
    return PathDecomposition(bags=tuple(bags))


def interval_connectivity(m: IntervalModel) -> int:
    """kappa of the derived interval graph.

    Minimal separators of an interval graph are the intersections of
    consecutive maximal cliques of its clique path, so the connectivity is
    the smallest such intersection (n - 1 for a single clique).  Used by
    the generators; cross-checked against flow-based connectivity in tests.
    """
    if m.n < 2:
        raise GraphError("degenerate-graph", f"n={m.n}")
    g = m.derive_graph()
    if not is_connected(g):
        return 0
    bags = interval_path_decomposition(m).bags
    if len(bags) == 1:
        return m.n - 1
    return min(len(bags[i] & bags[i + 1]) for i in range(len(bags) - 1))
