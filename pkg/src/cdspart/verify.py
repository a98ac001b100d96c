"""Independent validators and exact brute-force oracles.

The verifiers re-derive every property from graph primitives alone (they
never trust solver state), report all violations rather than the first,
and serialize to a line format of `OK` or `FAIL <rule-id> <detail>`.  The
oracles exhaustively search tiny instances and return lexicographically
smallest witnesses so golden tests are reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

from .engine import GLInstance, GlPartition
from .graphs import Graph, GraphError, VertexSet, dominates, is_connected_subset
from .models import ConvexModel


@dataclass(frozen=True)
class VerificationReport:
    violations: tuple[tuple[str, str], ...]

    @property
    def ok(self) -> bool:
        return not self.violations

    def render(self) -> str:
        if self.ok:
            return "OK"
        return "\n".join(f"FAIL {rule} {detail}" for rule, detail in self.violations)


def _as_blocks(p: GlPartition | Sequence[Iterable[int]]) -> list[frozenset[int]]:
    if isinstance(p, GlPartition):
        return [frozenset(b) for b in p.blocks]
    return [frozenset(b) for b in p]


def _partition_violations(g: Graph, blocks: list[frozenset[int]]) -> list[tuple[str, str]]:
    out: list[tuple[str, str]] = []
    seen: dict[int, int] = {}
    for i, b in enumerate(blocks):
        for v in b:
            if not 0 <= v < g.n:
                out.append(("partition", f"block {i} holds unknown vertex {v}"))
            elif v in seen:
                out.append(("partition", f"vertex {v} in blocks {seen[v]} and {i}"))
            else:
                seen[v] = i
    missing = [v for v in range(g.n) if v not in seen]
    if missing:
        out.append(("partition", f"uncovered vertices {missing}"))
    return out


def verify_gl(instance: GLInstance, p: GlPartition | Sequence[Iterable[int]]) -> VerificationReport:
    """Check the four partition conditions: cover, sizes, terminals, connectivity."""
    g = instance.graph
    blocks = _as_blocks(p)
    v: list[tuple[str, str]] = []
    if len(blocks) != instance.k:
        v.append(("partition", f"{len(blocks)} blocks for k={instance.k}"))
    v += _partition_violations(g, blocks)
    for i, b in enumerate(blocks[: instance.k]):
        if len(b) != instance.demands[i]:
            v.append(("size-mismatch", f"block {i} has {len(b)}, demand {instance.demands[i]}"))
        if instance.terminals[i] not in b:
            v.append(("terminal-missing", f"terminal {instance.terminals[i]} not in block {i}"))
        if not b or not is_connected_subset(g, b):
            v.append(("not-connected", f"block {i}"))
    return VerificationReport(tuple(v))


def verify_cds_partition(g: Graph, p: Sequence[Iterable[int]]) -> VerificationReport:
    """Check partition-of-V plus per-block connectivity and domination."""
    blocks = _as_blocks(p)
    v = _partition_violations(g, blocks)
    for i, b in enumerate(blocks):
        if not b or not is_connected_subset(g, b):
            v.append(("not-connected", f"block {i}"))
        if not dominates(g, b):
            uncovered = next(
                w for w in range(g.n) if w not in b and not (g.neighbor_set(w) & b)
            )
            v.append(("not-dominating", f"block {i} misses vertex {uncovered}"))
    return VerificationReport(tuple(v))


def verify_cds_family(g: Graph, sets: Sequence[Iterable[int]]) -> VerificationReport:
    """Like verify_cds_partition but the sets need not cover V."""
    blocks = _as_blocks(sets)
    v: list[tuple[str, str]] = []
    seen: set[int] = set()
    for i, b in enumerate(blocks):
        if b & seen:
            v.append(("not-disjoint", f"set {i} overlaps an earlier set"))
        seen |= b
        if not b or not is_connected_subset(g, b):
            v.append(("not-connected", f"set {i}"))
        if not dominates(g, b):
            v.append(("not-dominating", f"set {i}"))
    return VerificationReport(tuple(v))


# -- bitmask helpers ---------------------------------------------------------


def _adj_masks(g: Graph) -> list[int]:
    masks = [0] * g.n
    for v in range(g.n):
        for w in g.neighbors(v):
            masks[v] |= 1 << w
    return masks


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _connected_mask(adj: list[int], mask: int) -> bool:
    comp = mask & -mask
    while True:
        grow = comp
        for v in _bits(comp):
            grow |= adj[v] & mask
        if grow == comp:
            return comp == mask
        comp = grow


# -- oracles -----------------------------------------------------------------


def brute_gl(instance: GLInstance, max_n: int = 14) -> GlPartition | None:
    """Exhaustive search for a valid partition; lexicographically smallest.

    Vertices are assigned in ascending id to the lowest feasible block;
    partial assignments are pruned by block capacity, by connectivity once
    a block fills, and by reachability of a block's fragments through the
    still-unassigned vertices.
    """
    g = instance.graph
    if g.n > max_n:
        raise GraphError("too-large-for-oracle", f"n={g.n} > {max_n}")
    adj = _adj_masks(g)
    k = instance.k
    term_block = {c: i for i, c in enumerate(instance.terminals)}
    free = [v for v in range(g.n) if v not in term_block]
    block_mask = [1 << instance.terminals[i] for i in range(k)]
    counts = [1] * k
    suffix_future = [0] * (len(free) + 1)
    for pos in range(len(free) - 1, -1, -1):
        suffix_future[pos] = suffix_future[pos + 1] | (1 << free[pos])

    def feasible(pos: int) -> bool:
        future = suffix_future[pos]
        for i in range(k):
            if counts[i] == instance.demands[i]:
                continue
            hull = block_mask[i] | future
            comp = block_mask[i] & -block_mask[i]
            while True:
                grow = comp
                for v in _bits(comp):
                    grow |= adj[v] & hull
                if grow == comp:
                    break
                comp = grow
            if block_mask[i] & ~comp:
                return False
        return True

    def search(pos: int) -> list[int] | None:
        if pos == len(free):
            return list(block_mask)
        v = free[pos]
        for b in range(k):
            if counts[b] == instance.demands[b]:
                continue
            block_mask[b] |= 1 << v
            counts[b] += 1
            ok = True
            if counts[b] == instance.demands[b]:
                ok = _connected_mask(adj, block_mask[b])
            if ok and feasible(pos + 1):
                res = search(pos + 1)
                if res is not None:
                    return res
            block_mask[b] &= ~(1 << v)
            counts[b] -= 1
        return None

    if not feasible(0):
        return None
    masks = search(0)
    if masks is None:
        return None
    return GlPartition(tuple(frozenset(_bits(m)) for m in masks))


def brute_cds(g: Graph, k: int, max_n: int = 14) -> tuple[VertexSet, ...] | None:
    """Exhaustive search for k pairwise-disjoint CDSs; first in lex order."""
    if g.n > max_n:
        raise GraphError("too-large-for-oracle", f"n={g.n} > {max_n}")
    if k < 1:
        raise GraphError("bad-k", f"k={k}")
    adj = _adj_masks(g)
    full = (1 << g.n) - 1
    cds_masks = []
    for mask in range(1, 1 << g.n):
        closed = mask
        for v in _bits(mask):
            closed |= adj[v]
        if closed == full and _connected_mask(adj, mask):
            cds_masks.append(mask)
    cds_masks.sort(key=lambda m: tuple(_bits(m)))

    def search(start: int, used: int, chosen: list[int]) -> list[int] | None:
        if len(chosen) == k:
            return chosen
        for idx in range(start, len(cds_masks)):
            m = cds_masks[idx]
            if m & used:
                continue
            res = search(idx + 1, used | m, chosen + [m])
            if res is not None:
                return res
        return None

    found = search(0, 0, [])
    if found is None:
        return None
    return tuple(frozenset(_bits(m)) for m in found)


def brute_min_vertex_cut(g: Graph, s: int, t: int, max_n: int = 24) -> int:
    """Minimum s-t vertex cut by subset enumeration (adjacent-edge convention).

    For adjacent endpoints the direct edge cannot be cut by vertex removal,
    so it contributes 1 plus the cut of the graph without that edge.
    """
    if g.n > max_n:
        raise GraphError("too-large-for-oracle", f"n={g.n} > {max_n}")
    if s == t:
        raise GraphError("identical-endpoints")
    if g.has_edge(s, t):
        stripped = Graph(g.n, [e for e in g.edges() if set(e) != {s, t}])
        return 1 + brute_min_vertex_cut(stripped, s, t, max_n)
    adj = _adj_masks(g)
    others = [v for v in range(g.n) if v != s and v != t]

    def separated(removed_mask: int) -> bool:
        comp = 1 << s
        allowed = ((1 << g.n) - 1) & ~removed_mask
        while True:
            grow = comp
            for v in _bits(comp):
                grow |= adj[v] & allowed
            if grow == comp:
                return not (comp >> t) & 1
            comp = grow

    for size in range(len(others) + 1):
        for cut in combinations(others, size):
            mask = 0
            for v in cut:
                mask |= 1 << v
            if separated(mask):
                return size
    return len(others)


def brute_vertex_connectivity(g: Graph, max_n: int = 20) -> int:
    """kappa by enumerating separators; n - 1 for complete graphs."""
    if g.n > max_n:
        raise GraphError("too-large-for-oracle", f"n={g.n} > {max_n}")
    if g.n < 2:
        raise GraphError("degenerate-graph")
    if g.is_complete():
        return g.n - 1
    adj = _adj_masks(g)
    full = (1 << g.n) - 1
    for size in range(g.n - 1):
        for cut in combinations(range(g.n), size):
            mask = 0
            for v in cut:
                mask |= 1 << v
            rest = full & ~mask
            if rest and not _connected_mask(adj, rest):
                return size
    return g.n - 1


# -- negative fixtures --------------------------------------------------------


def counterexample_chordal() -> Graph:
    """2-connected chordal graph on 6 vertices with no 2-CDS partition."""
    return Graph(
        6,
        [(0, 1), (0, 3), (1, 2), (1, 3), (1, 4), (2, 4), (3, 4), (3, 5), (4, 5)],
    )


def counterexample_convex_model() -> ConvexModel:
    """2-connected convex bipartite graph (5+5) with no 2-CDS partition."""
    return ConvexModel(na=5, nb=5, windows=((0, 1), (1, 2), (1, 2), (0, 4), (2, 4)))


def counterexample_convex() -> Graph:
    return counterexample_convex_model().derive_graph()
