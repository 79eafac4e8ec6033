"""Query tests: first/last/min/max extraction against enumeration oracles."""

from __future__ import annotations

import pytest

from mrsc.graphs import SizeMode, count_graphs, graph_size, gset2graphs
from mrsc.parser import parse_expression
from mrsc.queries import first_graph, last_graph, max_size_graph, min_size_graph
from mrsc.supercompile import GSFold, GSNone

MODES = (SizeMode.STANDARD, SizeMode.SKIP_UNFOLD)

# Size statistics of the whole corpus, queried without enumeration. All
# cells are frozen so that any change in driving, generalization, folding, or
# size accounting surfaces here first.
EXPECTED = {
    "double_append": dict(first=12, last=10, min=10, max=19, skip_min=9, skip_max=19, count=3),
    "exp_growth": dict(first=15, last=37, min=15, max=57, skip_min=11, skip_max=47, count=5552),
    "eqbool_sym": dict(first=16, last=17, min=16, max=30, skip_min=7, skip_max=29, count=301),
    "kmp": dict(
        first=203,
        last=39,
        min=38,
        max=1051,
        skip_min=13,
        skip_max=921,
        count=996410048036957136,
    ),
}


class TestTrivialInputs:
    def test_none_has_no_graphs(self):
        gs = GSNone()
        assert first_graph(gs) is None
        assert last_graph(gs) is None
        assert min_size_graph(gs) is None
        assert max_size_graph(gs) is None

    def test_fold_is_its_own_optimum(self):
        gs = GSFold(parse_expression("f(x)"), 1, ())
        assert first_graph(gs) == last_graph(gs)
        for mode in MODES:
            low = min_size_graph(gs, mode)
            high = max_size_graph(gs, mode)
            assert low.size == high.size == 1
            assert low.graph == first_graph(gs)


class TestCorpusStatistics:
    @pytest.mark.parametrize("name", sorted(EXPECTED))
    def test_statistics(self, name, graph_sets):
        gs = graph_sets[name]
        want = EXPECTED[name]
        assert graph_size(first_graph(gs)) == want["first"]
        assert graph_size(last_graph(gs)) == want["last"]
        assert min_size_graph(gs).size == want["min"]
        assert max_size_graph(gs).size == want["max"]
        assert min_size_graph(gs, SizeMode.SKIP_UNFOLD).size == want["skip_min"]
        assert max_size_graph(gs, SizeMode.SKIP_UNFOLD).size == want["skip_max"]
        assert count_graphs(gs) == want["count"]

    @pytest.mark.parametrize("name", sorted(EXPECTED))
    def test_result_sizes_are_consistent(self, name, graph_sets):
        gs = graph_sets[name]
        for mode in MODES:
            low = min_size_graph(gs, mode)
            high = max_size_graph(gs, mode)
            assert low.size == graph_size(low.graph, mode)
            assert high.size == graph_size(high.graph, mode)
            for endpoint in (first_graph(gs), last_graph(gs)):
                assert low.size <= graph_size(endpoint, mode) <= high.size


class TestEnumerationOracle:
    """Brute force over every graph wherever full enumeration is feasible."""

    SMALL = ("double_append", "exp_growth", "eqbool_sym")

    @pytest.mark.parametrize("name", SMALL)
    def test_min_max_match_enumeration_extrema(self, name, graph_sets):
        gs = graph_sets[name]
        assert count_graphs(gs) <= 10**5
        graphs = list(gset2graphs(gs))
        for mode in MODES:
            sizes = [graph_size(g, mode) for g in graphs]
            assert min_size_graph(gs, mode).size == min(sizes)
            assert max_size_graph(gs, mode).size == max(sizes)

    @pytest.mark.parametrize("name", SMALL)
    def test_first_last_match_enumeration_endpoints(self, name, graph_sets):
        gs = graph_sets[name]
        graphs = list(gset2graphs(gs))
        assert first_graph(gs) == graphs[0]
        assert last_graph(gs) == graphs[-1]

    @pytest.mark.parametrize("name", SMALL)
    def test_witness_is_enumerable(self, name, graph_sets):
        """The reconstructed optimum is one of the actual graphs."""
        gs = graph_sets[name]
        graphs = list(gset2graphs(gs))
        for mode in MODES:
            assert min_size_graph(gs, mode).graph in graphs
            assert max_size_graph(gs, mode).graph in graphs

    def test_min_tie_breaks_to_earliest(self, doub):
        """Queries are deterministic; re-running yields the identical witness."""
        _, _, gs = doub
        for mode in MODES:
            assert min_size_graph(gs, mode) == min_size_graph(gs, mode)
            assert max_size_graph(gs, mode) == max_size_graph(gs, mode)


class TestPolynomialTimeOnHugeSets:
    def test_kmp_queries_do_not_enumerate(self, kmp):
        """All six queries answer on a set of ~10^18 graphs."""
        import time

        _, _, gs = kmp
        started = time.perf_counter()
        assert graph_size(first_graph(gs)) == 203
        assert graph_size(last_graph(gs)) == 39
        assert min_size_graph(gs).size == 38
        assert max_size_graph(gs).size == 1051
        assert min_size_graph(gs, SizeMode.SKIP_UNFOLD).size == 13
        assert max_size_graph(gs, SizeMode.SKIP_UNFOLD).size == 921
        elapsed = time.perf_counter() - started
        assert elapsed < 10.0
