"""Seeded synthetic generators"""

import pytest

from core.errors import GraphInputError
from core.flexi_math import Tau
from core.oracle import brute_force_max_flexi
from integration.generators import gen_er, gen_planted


def test_er_sizes():
    graph = gen_er(30, 60, seed=1)
    assert (graph.n, graph.m) == (30, 60)


def test_er_is_reproducible():
    assert gen_er(25, 40, seed=7).adjacency == gen_er(25, 40, seed=7).adjacency


def test_er_dense_request():
    graph = gen_er(10, 44, seed=3)
    assert graph.m == 44


def test_er_complete_and_empty():
    assert gen_er(6, 15, seed=0).m == 15
    assert gen_er(6, 0, seed=0).n == 6


def test_er_rejects_too_many_edges():
    with pytest.raises(GraphInputError):
        gen_er(4, 7, seed=0)


def test_planted_clique_is_present():
    graph, planted = gen_planted(40, 50, 8, seed=11)
    assert len(planted) == 8
    for u in planted:
        assert planted - {u} <= graph.neighbor_set(u)
    assert graph.m == 50 + 28


def test_planted_clique_bounds_the_optimum():
    graph, planted = gen_planted(14, 10, 6, seed=2)
    assert brute_force_max_flexi(graph, Tau(3, 4)).size >= len(planted)


def test_planted_rejects_oversized_clique():
    with pytest.raises(GraphInputError):
        gen_planted(5, 0, 6, seed=0)


def test_full_density_is_complete():
    graph = gen_er(5, 10, seed=9)
    assert all(graph.degree(v) == 4 for v in graph.nodes())


def test_planted_edge_only():
    graph, planted = gen_planted(10, 0, 2, seed=3)
    assert graph.m == 1
    assert graph.has_edge(*sorted(planted))
