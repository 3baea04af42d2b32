"""Flexi-Prune heuristic"""

import pytest

from conftest import complete_edges, random_graph
from core.flexi_math import Tau, is_flexi
from core.fpa import FlexiPruneHeuristic, FlexiResult, run_fpa, select_seed, subgraph_profile
from core.graph_core import build_graph, largest_component
from core.oracle import brute_force_max_flexi


class TestSeed:
    def test_seven_node_graph_seeds_with_everything(self, seven_node_graph, tau):
        heuristic = FlexiPruneHeuristic(tau("3/4"))
        assert heuristic.select_seed(seven_node_graph) == frozenset(range(7))
        assert heuristic.seed_level == 4

    def test_edgeless_graph_has_empty_seed(self):
        assert select_seed(build_graph([], nodes=range(4)), Tau(1, 2)) == frozenset()

    def test_star_falls_back_to_max_core(self, tau):
        star = build_graph([(0, leaf) for leaf in range(1, 6)])
        heuristic = FlexiPruneHeuristic(tau("3/4"))
        assert heuristic.select_seed(star) == frozenset(range(6))
        assert heuristic.seed_level is None


class TestRun:
    def test_seven_node_graph(self, seven_node_graph, tau):
        result = run_fpa(seven_node_graph, tau("3/4"))
        assert result.valid
        assert result.members == frozenset(range(6))
        assert result.algorithm_tag == "fpa"
        assert result.min_degree == 3

    def test_star_peels_down_to_an_edge(self, tau):
        star = build_graph([(0, leaf) for leaf in range(1, 6)])
        result = run_fpa(star, tau("3/4"))
        assert result.valid
        assert result.members == frozenset({0, 5})

    def test_complete_graph_is_kept_whole(self, tau):
        result = run_fpa(build_graph(complete_edges(range(8))), tau("9/10"))
        assert result.size == 8
        assert result.density == 1.0

    def test_edgeless_graph_fails_explicitly(self):
        result = run_fpa(build_graph([], nodes=range(3)), Tau(1, 2))
        assert not result.valid
        assert result.size == 0
        assert result.members == frozenset()

    def test_tau_zero_returns_largest_component(self):
        graph = build_graph([(0, 1), (1, 2), (2, 3), (5, 6)], nodes=range(7))
        result = run_fpa(graph, Tau(0, 1))
        assert result.members == largest_component(graph)

    @pytest.mark.parametrize("text", ["1/2", "3/4", "9/10"])
    def test_karate_result_is_valid(self, karate, tau, text):
        result = run_fpa(karate, tau(text), debug_checks=True)
        assert result.valid
        assert is_flexi(karate, result.members, tau(text))

    def test_never_beats_the_oracle(self, tau):
        for seed in range(15):
            graph = random_graph(11, 0.45, seed)
            for text in ("1/2", "3/4"):
                heuristic = run_fpa(graph, tau(text), debug_checks=True)
                exact = brute_force_max_flexi(graph, tau(text))
                if heuristic.valid:
                    assert is_flexi(graph, heuristic.members, tau(text))
                assert heuristic.size <= exact.size

    def test_peel_count(self, seven_node_graph, tau):
        heuristic = FlexiPruneHeuristic(tau("3/4"))
        heuristic.run(seven_node_graph)
        assert heuristic.peels == 1


class TestResult:
    def test_profile(self, k33):
        assert subgraph_profile(k33, frozenset(range(6))) == (3, 9 / 15)
        assert subgraph_profile(k33, frozenset()) == (0, 0.0)

    def test_external_members_use_original_labels(self, tau):
        graph = build_graph([("a", "b"), ("b", "c"), ("a", "c")])
        result = run_fpa(graph, tau("3/4"))
        assert sorted(result.external_members(graph)) == ["a", "b", "c"]

    def test_build_fills_profile(self, k33):
        result = FlexiResult.build(k33, {0, 3}, True, 1.5, "fpa")
        assert (result.size, result.min_degree, result.density) == (2, 1, 1.0)
        assert result.optimal is None
