import pytest

from cdspart.graphs import GraphError, vertex_connectivity
from cdspart.models import (
    BiconvexModel,
    ConvexModel,
    IntervalModel,
    PathDecomposition,
    interval_connectivity,
    interval_path_decomposition,
)
from cdspart.generators import SplitMix64, gen_interval


def random_interval_model(seed, n, span=None, lo_len=1, hi_len=6):
    rng = SplitMix64(seed)
    span = span or 2 * n
    lefts, rights = [], []
    for _ in range(n):
        a = rng.randint(1, span)
        lefts.append(a)
        rights.append(a + rng.randint(lo_len, hi_len))
    return IntervalModel(lefts=tuple(lefts), rights=tuple(rights))


class TestIntervalModel:
    def test_rejects_reversed(self):
        with pytest.raises(GraphError, match="bad-model"):
            IntervalModel(lefts=(3,), rights=(1,))

    def test_derive_overlap(self):
        m = IntervalModel(lefts=(1, 2, 5), rights=(3, 4, 6))
        g = m.derive_graph()
        assert g.has_edge(0, 1) and not g.has_edge(0, 2) and not g.has_edge(1, 2)


class TestIntervalDecomposition:
    def test_identical_intervals_single_bag(self):
        m = IntervalModel(lefts=(1,) * 5, rights=(4,) * 5)
        d = interval_path_decomposition(m)
        assert d.bags == (frozenset(range(5)),)
        assert d.width == 4

    def test_three_step_chain(self):
        m = IntervalModel(lefts=(1, 2, 3), rights=(2, 3, 4))
        d = interval_path_decomposition(m)
        assert d.bags == (frozenset({0, 1}), frozenset({1, 2}))
        assert d.width == 1

    def test_disconnected_error(self):
        m = IntervalModel(lefts=(1, 10), rights=(2, 11))
        with pytest.raises(GraphError, match="disconnected"):
            interval_path_decomposition(m)

    @pytest.mark.parametrize("seed", range(30))
    def test_axioms_on_random_models(self, seed):
        n = 8 + seed % 33
        m = random_interval_model(seed, n, hi_len=8)
        g = m.derive_graph()
        try:
            d = interval_path_decomposition(m)
        except GraphError:
            return  # disconnected sample
        d.check(g)

    @pytest.mark.parametrize("seed", range(15))
    def test_bags_are_cliques(self, seed):
        m = random_interval_model(seed, 12)
        g = m.derive_graph()
        try:
            d = interval_path_decomposition(m)
        except GraphError:
            return
        for bag in d.bags:
            vs = sorted(bag)
            for i in range(len(vs)):
                for j in range(i + 1, len(vs)):
                    assert g.has_edge(vs[i], vs[j])


class TestIntervalConnectivity:
    @pytest.mark.parametrize("seed", range(25))
    def test_matches_flow_connectivity(self, seed):
        n = 6 + seed % 12
        m = random_interval_model(seed, n, hi_len=5 + seed % 5)
        assert interval_connectivity(m) == vertex_connectivity(m.derive_graph())

    def test_complete_case(self):
        m = IntervalModel(lefts=(1,) * 4, rights=(9,) * 4)
        assert interval_connectivity(m) == 3

    def test_generator_postcondition(self):
        for seed in range(6):
            k = 2 + seed % 4
            m = gen_interval(24, k, seed)
            assert interval_connectivity(m) >= k
            assert vertex_connectivity(m.derive_graph()) == interval_connectivity(m)


class TestConvexModels:
    def test_window_out_of_range(self):
        with pytest.raises(GraphError, match="bad-model"):
            ConvexModel(na=3, nb=1, windows=((0, 3),))

    def test_biconvex_contiguity_enforced(self):
        # b0 sees a0..a1, b1 sees a2, b2 sees a0..a2: a0 has B-neighbors {0, 2}
        with pytest.raises(GraphError, match="non-contiguous"):
            BiconvexModel(na=3, nb=3, windows=((0, 1), (2, 2), (0, 2)))

    def test_derive_graph_ids(self):
        m = ConvexModel(na=2, nb=2, windows=((0, 0), (0, 1)))
        g = m.derive_graph()
        assert g.has_edge(0, 2) and g.has_edge(0, 3) and g.has_edge(1, 3)
        assert not g.has_edge(0, 1) and not g.has_edge(2, 3)


class TestPathDecompositionChecker:
    def test_rejects_missing_edge(self):
        from cdspart.graphs import Graph

        g = Graph(3, [(0, 1), (1, 2), (0, 2)])
        d = PathDecomposition(bags=(frozenset({0, 1}), frozenset({1, 2})))
        with pytest.raises(GraphError, match="bad-decomposition"):
            d.check(g)

    def test_rejects_gap_occurrence(self):
        from cdspart.graphs import Graph

        g = Graph(3, [(0, 1), (1, 2)])
        d = PathDecomposition(
            bags=(frozenset({0, 1}), frozenset({1, 2}), frozenset({0, 1}))
        )
        with pytest.raises(GraphError, match="bad-decomposition"):
            d.check(g)
