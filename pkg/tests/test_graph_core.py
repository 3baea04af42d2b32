"""Graph construction and static primitives, checked against networkx"""

import math
import random

import networkx as nx
import pytest

from conftest import random_graph
from core.errors import GraphSizeError
from core.graph_core import (
    MAX_NODES,
    Graph,
    articulation_points,
    bfs_distances,
    build_graph,
    build_graph_counted,
    connected_components,
    core_decomposition,
    graph_from_networkx,
    induced_degrees,
    induced_edge_count,
    largest_component,
)


class TestBuildGraph:
    def test_drops_loops_and_duplicates(self):
        graph, loops, duplicates = build_graph_counted([(0, 0), (0, 1), (1, 0), (1, 2)])
        assert (graph.n, graph.m) == (3, 2)
        assert (loops, duplicates) == (1, 1)

    def test_integer_ids_map_to_themselves(self):
        graph = build_graph([(2, 0), (1, 2)])
        assert graph.labels == (0, 1, 2)
        assert graph.neighbors(2) == (0, 1)

    def test_one_based_ids_shift_down(self):
        graph = build_graph([(1, 2), (2, 3)])
        assert graph.index_of(1) == 0
        assert graph.external([0, 2]) == [1, 3]

    def test_integers_sort_before_strings(self):
        graph = build_graph([("b", 10), ("a", 2)])
        assert graph.labels == (2, 10, "a", "b")

    def test_isolated_nodes(self):
        graph = build_graph([(0, 1)], nodes=range(4))
        assert graph.n == 4
        assert graph.degree(3) == 0

    def test_too_many_nodes(self, monkeypatch):
        monkeypatch.setattr("core.graph_core.MAX_NODES", 3)
        with pytest.raises(GraphSizeError):
            build_graph([(0, 1), (2, 3)])
        assert MAX_NODES == 2 ** 31 - 1

    def test_rejects_asymmetric_adjacency(self):
        with pytest.raises(ValueError):
            Graph([[1], []])

    def test_networkx_round_trip(self, karate):
        assert nx.is_isomorphic(karate.to_networkx(), nx.karate_club_graph())
        assert graph_from_networkx(karate.to_networkx()).adjacency == karate.adjacency


class TestComponents:
    def test_order_by_smallest_member(self):
        graph = build_graph([(5, 6), (0, 4), (2, 3)], nodes=range(7))
        components = connected_components(graph)
        assert components == [frozenset({0, 4}), frozenset({1}), frozenset({2, 3}), frozenset({5, 6})]

    def test_scope_restricts(self, path_graph):
        graph = path_graph(5)
        assert connected_components(graph, {0, 1, 3, 4}) == [frozenset({0, 1}), frozenset({3, 4})]

    def test_largest_prefers_smallest_id(self):
        graph = build_graph([(0, 1), (2, 3)])
        assert largest_component(graph) == frozenset({0, 1})

    def test_matches_networkx(self):
        for seed in range(10):
            graph = random_graph(30, 0.06, seed)
            expected = sorted((frozenset(c) for c in nx.connected_components(graph.to_networkx())), key=min)
            assert connected_components(graph) == expected


class TestDistances:
    def test_unreachable_is_infinite(self):
        graph = build_graph([(0, 1), (2, 3)])
        distances = bfs_distances(graph, 0)
        assert distances[1] == 1
        assert math.isinf(distances[2])

    def test_scope(self, cycle_graph):
        graph = cycle_graph(6)
        assert bfs_distances(graph, 0, {0, 1, 2, 3})[3] == 3
        assert bfs_distances(graph, 0)[3] == 3
        assert bfs_distances(graph, 0)[5] == 1

    def test_source_outside_scope(self, path_graph):
        with pytest.raises(ValueError):
            bfs_distances(path_graph(3), 0, {1, 2})

    def test_symmetric_and_triangle_inequality(self):
        rng = random.Random(3)
        for seed in range(20):
            graph = random_graph(rng.randint(5, 40), rng.choice([0.05, 0.1, 0.3]), seed)
            table = {v: bfs_distances(graph, v) for v in graph.nodes()}
            for _ in range(200):
                u, v, w = (rng.randrange(graph.n) for _ in range(3))
                assert table[u][v] == table[v][u]
                assert table[u][w] <= table[u][v] + table[v][w]
            for u, v in graph.edges():
                assert table[0][u] == table[0][v] or abs(table[0][u] - table[0][v]) == 1

    def test_matches_networkx(self, karate):
        expected = nx.single_source_shortest_path_length(karate.to_networkx(), 0)
        assert bfs_distances(karate, 0) == expected


def peel_to_core(graph, k):
    alive = set(graph.nodes())
    changed = True
    while changed:
        changed = False
        for v in sorted(alive):
            if sum(1 for u in graph.neighbors(v) if u in alive) < k:
                alive.discard(v)
                changed = True
    return frozenset(alive)


class TestCores:
    def test_k5_plus(self, k5_plus):
        cores = core_decomposition(k5_plus)
        assert cores.max_core == 4
        assert cores.core_nodes(4) == frozenset(range(5))
        assert cores.core_number[5] == 1

    def test_empty(self):
        assert core_decomposition(build_graph([])).max_core == 0

    def test_matches_networkx(self, karate):
        graphs = [karate] + [random_graph(40, 0.15, seed) for seed in range(5)]
        for graph in graphs:
            expected = nx.core_number(graph.to_networkx())
            assert core_decomposition(graph).core_number == tuple(expected[v] for v in graph.nodes())

    def test_cores_are_maximal(self):
        rng = random.Random(11)
        for seed in range(100):
            graph = random_graph(rng.randint(1, 64), rng.choice([0.05, 0.15, 0.4]), seed)
            cores = core_decomposition(graph)
            for k in range(1, cores.max_core + 2):
                assert cores.core_nodes(k) == peel_to_core(graph, k), (seed, k)


class TestArticulation:
    def test_path(self, path_graph):
        assert articulation_points(path_graph(4)) == {1, 2}

    def test_k5_plus(self, k5_plus):
        assert articulation_points(k5_plus) == {0}

    def test_cycle_has_none(self, cycle_graph):
        assert articulation_points(cycle_graph(7)) == set()

    def test_scope(self, cycle_graph):
        assert articulation_points(cycle_graph(6), {0, 1, 2, 3}) == {1, 2}

    def test_matches_networkx(self, karate):
        graphs = [karate] + [random_graph(25, 0.12, seed) for seed in range(10)]
        for graph in graphs:
            assert articulation_points(graph) == set(nx.articulation_points(graph.to_networkx()))

    def test_matches_remove_and_count(self):
        rng = random.Random(23)
        for seed in range(40):
            graph = random_graph(rng.randint(2, 20), rng.choice([0.1, 0.2, 0.35]), seed)
            nodes = set(graph.nodes())
            baseline = len(connected_components(graph))
            expected = {v for v in nodes if len(connected_components(graph, nodes - {v})) > baseline}
            assert articulation_points(graph) == expected, seed


def test_induced_degrees(k33):
    assert induced_degrees(k33, {0, 1, 3}) == {0: 1, 1: 1, 3: 2}


def test_induced_edge_count(k33, karate):
    assert induced_edge_count(k33, {0, 1, 3, 4}) == 4
    assert induced_edge_count(karate, None) == karate.m
