import pytest
from hypothesis import given
from hypothesis import strategies as st

from cdspart.engine import GLInstance
from cdspart.formats import (
    FormatError,
    InstanceBundle,
    build_cds_input,
    parse_bundle,
    parse_cds_sets,
    parse_partition,
    write_bundle,
    write_cds,
    write_partition,
    write_trace,
)
from cdspart.generators import (
    gen_biconvex,
    gen_convex,
    gen_gl_extension,
    gen_interval,
    gen_planted_cds,
)
from cdspart.graphs import Graph
from cdspart.models import BiconvexModel, IntervalModel


class TestGraphParsing:
    def test_path_graph(self):
        b = parse_bundle("p gl 3 2\ne 1 2\ne 2 3\n")
        assert b.graph.n == 3 and b.graph.m == 2
        assert b.graph.has_edge(0, 1) and b.graph.has_edge(1, 2)

    def test_comments_anywhere(self):
        text = "# header\np gl 2 1 # trailing\n# middle\ne 1 2\n"
        assert parse_bundle(text).graph.m == 1

    def test_syntax_error_line_number(self):
        with pytest.raises(FormatError, match="syntax error at line 2"):
            parse_bundle("p gl 2 1\nx 1 2\n")

    def test_extension_sum_mismatch(self):
        text = "p gl 3 2\ne 1 2\ne 2 3\nk 2\nt 1 1\nt 2 1\n"
        with pytest.raises(FormatError, match="invariant violated"):
            parse_bundle(text)

    def test_extension_round_trip(self):
        text = "p gl 3 2\ne 1 2\ne 2 3\nk 2\nt 1 1\nt 3 2\n"
        b = parse_bundle(text)
        inst = b.gl_instance()
        assert isinstance(inst, GLInstance)
        assert inst.terminals == (0, 2) and inst.demands == (1, 2)

    def test_duplicate_edge_rejected(self):
        with pytest.raises(FormatError, match="invariant"):
            parse_bundle("p gl 2 2\ne 1 2\ne 2 1\n")

    def test_zero_demand_rejected(self):
        text = "p gl 2 1\ne 1 2\nk 2\nt 1 0\nt 2 2\n"
        with pytest.raises(FormatError, match="demand 0"):
            parse_bundle(text)


class TestModelParsing:
    def test_interval(self):
        b = parse_bundle("p interval 2\ni 1 1 3\ni 2 2 5\n")
        assert isinstance(b.model, IntervalModel)
        assert b.graph.has_edge(0, 1)

    def test_convex_contiguity_enforced(self):
        text = "p convex 3 1 2\ne 1 1\ne 3 1\n"
        with pytest.raises(FormatError, match="non-contiguous"):
            parse_bundle(text)

    def test_biconvex_b_side_contiguity(self):
        # A-vertex 1 would have B-neighborhood {1, 3}
        text = "p biconvex 3 3 5\ne 1 1\ne 2 1\ne 2 2\ne 3 2\ne 1 3\n"
        with pytest.raises(FormatError, match="non-contiguous"):
            parse_bundle(text)

    def test_biconvex_accepted(self):
        text = "p biconvex 3 2 4\ne 1 1\ne 2 1\ne 2 2\ne 3 2\n"
        b = parse_bundle(text)
        assert isinstance(b.model, BiconvexModel)


def bundle_samples(count):
    out = []
    for seed in range(count):
        m = gen_interval(10 + seed % 20, 2, seed)
        t, d = gen_gl_extension(m.n, 2, seed)
        out.append(InstanceBundle(model=m, graph=m.derive_graph(), terminals=t, demands=d))
        g, _ = gen_planted_cds(12 + seed % 25, 2, 3, seed)
        t, d = gen_gl_extension(g.n, 3, seed)
        out.append(InstanceBundle(model=g, graph=g, terminals=t, demands=d))
        mb = gen_biconvex(10 + seed % 6, 12 + seed % 8, 2, seed)
        out.append(InstanceBundle(model=mb, graph=mb.derive_graph()))
        mc = gen_convex(8 + seed % 5, 14 + seed % 9, 4, seed)
        out.append(InstanceBundle(model=mc, graph=mc.derive_graph()))
    return out


class TestRoundTrips:
    def test_write_parse_write_identity(self):
        for bundle in bundle_samples(30):
            text = write_bundle(bundle, comments=["sample"])
            again = parse_bundle(text)
            assert write_bundle(again) == write_bundle(parse_bundle(write_bundle(again)))
            assert type(again.model) is type(bundle.model)
            assert again.terminals == bundle.terminals

    def test_cds_round_trip(self):
        sets = (frozenset({0, 2}), frozenset({1, 3}))
        text = write_cds(sets)
        assert text == "c 2\ns 1 1 3\ns 2 2 4\n"
        assert parse_cds_sets(text, 4) == sets

    def test_partition_round_trip(self):
        blocks = (frozenset({0}), frozenset({1, 2}))
        text = write_partition(blocks)
        assert text == "v 1 1\nv 2 2 3\n"
        assert parse_partition(text, 3) == blocks

    def test_cds_set_index_enforced(self):
        with pytest.raises(FormatError, match="expected set index 1"):
            parse_cds_sets("c 1\ns 2 1\n", 3)

    def test_cds_count_enforced(self):
        with pytest.raises(FormatError, match="declared 2 sets"):
            parse_cds_sets("c 2\ns 1 1\n", 3)


class TestBuildCdsInput:
    def test_spanning_trees_derived(self):
        g = Graph(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
        trees = build_cds_input(g, [frozenset({0, 1}), frozenset({2, 3})])
        assert trees[0].edges == ((0, 1),)

    def test_disconnected_set_rejected(self):
        g = Graph(4, [(0, 1), (1, 2), (2, 3)])
        with pytest.raises(FormatError, match="set 1"):
            build_cds_input(g, [frozenset({0, 3})])


def test_trace_rendering():
    events = [("place", 4, 0), ("steal", 2, 1, 0), ("emit", 0, 2), ("emit", 1, -1)]
    assert write_trace(events) == "PLACE 5 1\nSTEAL 3 2 1\nEMIT 1 3\nEMIT 2 -\n"


class TestParserRobustness:
    @given(st.text(max_size=200))
    def test_arbitrary_text_raises_format_error_only(self, text):
        try:
            parse_bundle(text)
        except FormatError:
            pass

    @given(st.integers(0, 40), st.integers(0, 40))
    def test_mutated_valid_files(self, seed, pos):
        from cdspart.generators import SplitMix64

        m = gen_interval(8 + seed % 6, 2, seed % 4)
        t, d = gen_gl_extension(m.n, 2, seed)
        text = write_bundle(
            InstanceBundle(model=m, graph=m.derive_graph(), terminals=t, demands=d)
        )
        rng = SplitMix64(seed * 7 + pos)
        chars = list(text)
        for _ in range(1 + rng.randint(0, 3)):
            i = rng.randint(0, len(chars) - 1)
            chars[i] = "0123456789 ex\np"[rng.randint(0, 14)]
        try:
            parse_bundle("".join(chars))
        except FormatError:
            pass
