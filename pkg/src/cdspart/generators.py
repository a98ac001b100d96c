"""Seeded deterministic generators for models, planted instances and
terminal/demand extensions.

All randomness flows through SplitMix64, a published 64-bit generator
whose output stream is fixed by the seed alone, so identical parameters
reproduce byte-identical files on any platform.  Bounded integers are
derived as `lo + next_u64() % span`, shuffles are Fisher-Yates from the
top; both derivations are part of the reproducibility contract.
"""

from __future__ import annotations

from .engine import CdsInput
from .graphs import DominatingTree, Graph, GraphError, is_k_connected
from .models import BiconvexModel, ConvexModel, IntervalModel, interval_connectivity

_MASK = (1 << 64) - 1


class SplitMix64:
    """splitmix64; reference stream from seed 0 starts 0xE220A8397B1DCDAF."""

    def __init__(self, seed: int):
        self._state = seed & _MASK

    def next_u64(self) -> int:
        self._state = (self._state + 0x9E3779B97F4A7C15) & _MASK
        z = self._state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
        return z ^ (z >> 31)

    def randint(self, lo: int, hi: int) -> int:
        """Uniform-ish integer in [lo, hi] via modulo reduction."""
        assert lo <= hi
        return lo + self.next_u64() % (hi - lo + 1)

    def shuffle(self, xs: list) -> None:
        for i in range(len(xs) - 1, 0, -1):
            j = self.randint(0, i)
            xs[i], xs[j] = xs[j], xs[i]

    def sample_distinct(self, n: int, k: int) -> list[int]:
        """k distinct values from range(n), in draw order."""
        assert 0 <= k <= n
        pool = list(range(n))
        self.shuffle(pool)
        return pool[:k]


DEFAULT_RETRIES = 200


def gen_interval(n: int, target_k: int, seed: int, retries: int = DEFAULT_RETRIES) -> IntervalModel:
    """Random integer intervals, resampled until the derived graph is
    connected with connectivity at least target_k."""
    if n < target_k + 1:
        raise GraphError("generation-failed", f"need n >= target_k + 1, got {n}, {target_k}")
    rng = SplitMix64(seed)
    span = 2 * n
    lo_len = 2 * target_k + 1
    hi_len = 4 * target_k + 4
    for _ in range(retries):
        lefts = []
        rights = []
        for _ in range(n):
            a = rng.randint(1, span)
            b = a + rng.randint(lo_len, hi_len)
            lefts.append(a)
            rights.append(b)
        m = IntervalModel(lefts=tuple(lefts), rights=tuple(rights))
        if interval_connectivity(m) >= target_k:
            return m
    raise GraphError("generation-failed", f"no kappa>={target_k} interval model in {retries} tries")


def _staircase_windows(
    rng: SplitMix64, na: int, nb: int, width: int, hold: int
) -> list[tuple[int, int]]:
    """Nondecreasing fixed-width windows sweeping [0, na).

    The left edge takes every value in [0, na - width] at least once, so
    the sweep advances by at most 1 per step and any boundary between
    consecutive A-positions is spanned by >= width - 1 windows; `hold`
    copies are pinned at each extreme so the corner A-vertices reach
    degree `hold`.  Leftover window slots repeat random positions.
    """
    top = na - width
    lows = list(range(top + 1))
    extra = nb - len(lows)
    bonus = min(hold - 1, extra // 2)
    lows += [0] * bonus + [top] * bonus
    for _ in range(extra - 2 * bonus):
        lows.append(rng.randint(0, top))
    lows.sort()
    return [(lo, lo + width - 1) for lo in lows]


def gen_biconvex(
    na: int, nb: int, target_k: int, seed: int, retries: int = DEFAULT_RETRIES
) -> BiconvexModel:
    """Monotone-staircase windows (biconvex by construction), resampled
    until connectivity reaches target_k."""
    width = min(na, max(target_k + 2, na - nb + 2 * target_k - 1))
    if na < 2 or nb < 2 or nb < na - width + 2 * target_k - 1:
        raise GraphError("generation-failed", f"sizes too small: na={na}, nb={nb}")
    rng = SplitMix64(seed)
    for _ in range(retries):
        wide = width + rng.randint(0, 2)
        wide = min(na, max(wide, na - (nb - 2 * target_k + 1)))
        windows = _staircase_windows(rng, na, nb, wide, target_k)
        m = BiconvexModel(na=na, nb=nb, windows=tuple(windows))
        g = m.derive_graph()
        if is_k_connected(g, target_k):
            return m
    raise GraphError("generation-failed", f"no kappa>={target_k} biconvex model in {retries} tries")


def gen_convex(
    na: int, nb: int, target_k: int, seed: int, retries: int = DEFAULT_RETRIES
) -> ConvexModel:
    """Random windows certified to give connectivity >= target_k.

    Every window contains a common core of target_k consecutive
    A-positions and samples are rejected until every A-vertex has degree
    >= target_k.  Removing fewer than target_k vertices then leaves a
    core A-vertex alive that is adjacent to every surviving B-vertex,
    and every surviving A-vertex keeps some B-neighbor, so the remainder
    is connected; no flow computation is needed (tests cross-check the
    certificate against flow-based connectivity on small sizes).
    Callers building k CDSs pass target_k = 4k.
    """
    if na < max(2, target_k) or nb < 1:
        raise GraphError("generation-failed", f"sizes too small: na={na}, nb={nb}")
    rng = SplitMix64(seed)
    for _ in range(retries):
        core_lo = rng.randint(0, na - target_k)
        core_hi = core_lo + target_k - 1
        windows = []
        for _ in range(nb):
            # half the windows pin each extreme so the corner A-vertices
            # collect enough neighbors for the degree condition
            lo = 0 if rng.randint(0, 1) else rng.randint(0, core_lo)
            hi = na - 1 if rng.randint(0, 1) else rng.randint(core_hi, na - 1)
            windows.append((lo, hi))
        cover = [0] * na
        for lo, hi in windows:
            for i in range(lo, hi + 1):
                cover[i] += 1
        if min(cover) >= target_k:
            return ConvexModel(na=na, nb=nb, windows=tuple(windows))
    raise GraphError("generation-failed", f"no kappa>={target_k} convex model in {retries} tries")


def gen_planted_cds(
    n: int, k: int, extra_edges: int, seed: int
) -> tuple[Graph, CdsInput]:
    """A graph with k planted disjoint dominating path backbones.

    A subset of vertices is split into k paths; every other vertex gets an
    edge to a random member of every backbone (making each one dominating),
    then extra random edges are sprinkled on top.
    """
    if n < 2 * k or k < 1:
        raise GraphError("generation-failed", f"need n >= 2k, got n={n}, k={k}")
    rng = SplitMix64(seed)
    perm = list(range(n))
    rng.shuffle(perm)
    max_len = max(2, n // k - 1)
    backbones: list[list[int]] = []
    start = 0
    for _ in range(k):
        size = rng.randint(2, max_len)
        backbones.append(perm[start : start + size])
        start += size
    edges: set[tuple[int, int]] = set()

    def put(u: int, v: int) -> None:
        if u != v:
            edges.add((min(u, v), max(u, v)))

    for chain in backbones:
        for a, b in zip(chain, chain[1:]):
            put(a, b)
    members = [set(chain) for chain in backbones]
    for v in range(n):
        for i, chain in enumerate(backbones):
            if v not in members[i]:
                put(v, chain[rng.randint(0, len(chain) - 1)])
    added = 0
    while added < extra_edges:
        u = rng.randint(0, n - 1)
        v = rng.randint(0, n - 1)
        if u != v and (min(u, v), max(u, v)) not in edges:
            put(u, v)
            added += 1
    g = Graph(n, sorted(edges))
    trees = tuple(
        DominatingTree(
            vertices=frozenset(chain),
            edges=tuple((a, b) for a, b in zip(chain, chain[1:])),
        )
        for chain in backbones
    )
    for t in trees:
        t.validate(g)
    return g, trees


def gen_gl_extension(
    n: int, k: int, seed: int, within: list[int] | None = None
) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """k distinct terminals plus a random composition of n into k parts.

    Terminals are drawn uniformly (from `within` when given); demands come
    from k-1 distinct cut points of [1, n), so every part is positive.
    """
    if not 1 <= k <= n:
        raise GraphError("generation-failed", f"need 1 <= k <= n, got k={k}, n={n}")
    rng = SplitMix64(seed)
    pool = sorted(within) if within is not None else list(range(n))
    if len(pool) < k:
        raise GraphError("generation-failed", "terminal pool smaller than k")
    idx = rng.sample_distinct(len(pool), k)
    terminals = tuple(pool[i] for i in idx)
    cuts = sorted(x + 1 for x in rng.sample_distinct(n - 1, k - 1))
    bounds = [0] + cuts + [n]
    demands = tuple(bounds[i + 1] - bounds[i] for i in range(k))
    return terminals, demands
