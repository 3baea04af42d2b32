"""Shared fixtures for the flexi-clique test suite"""

import logging
import os
import sys
from unittest import mock

import networkx as nx
import pytest

# Add project root to path
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from core.flexi_math import parse_tau  # noqa: E402
from core.graph_core import build_graph, graph_from_networkx  # noqa: E402
from integration.generators import gen_er  # noqa: E402


def complete_edges(nodes):
    nodes = list(nodes)
    return [(a, b) for i, a in enumerate(nodes) for b in nodes[i + 1:]]


@pytest.fixture
def tau():
    return parse_tau


@pytest.fixture
def k33():
    return build_graph([(a, b) for a in range(3) for b in range(3, 6)])


@pytest.fixture
def k5_plus():
    """K5 on 0..4 with pendant node 5 hanging off node 0"""
    return build_graph(complete_edges(range(5)) + [(0, 5)])


@pytest.fixture
def seven_node_graph():
    """K5 on 0..4, node 5 joined to 2, 3, 4 and node 6 joined to 3, 4, 5"""
    return build_graph(complete_edges(range(5)) + [(5, 2), (5, 3), (5, 4), (6, 3), (6, 4), (6, 5)])


@pytest.fixture
def path_graph():
    def make(n):
        return build_graph([(i, i + 1) for i in range(n - 1)], nodes=range(n))
    return make


@pytest.fixture
def cycle_graph():
    def make(n):
        return build_graph([(i, (i + 1) % n) for i in range(n)])
    return make


@pytest.fixture(scope="session")
def karate():
    return graph_from_networkx(nx.karate_club_graph())


def random_graph(n, density, seed):
    m = round(density * n * (n - 1) / 2)
    return gen_er(n, m, seed)


@pytest.fixture
def random_graph_factory():
    return random_graph


FLEXI_VARIABLES = ("FLEXI_ENV", "FLEXI_LOG_LEVEL", "FLEXI_LOG_DIR", "FLEXI_DATA_DIR",
                   "FLEXI_TIMEOUT_S", "FLEXI_DEBUG", "FLEXI_WORKERS")


@pytest.fixture
def clean_env(monkeypatch, tmp_path):
    """No FLEXI_* variables, cwd in a temp dir; anything a .env adds is rolled back"""
    monkeypatch.chdir(tmp_path)
    with mock.patch.dict(os.environ):
        for name in FLEXI_VARIABLES:
            os.environ.pop(name, None)
        yield tmp_path


@pytest.fixture(autouse=True)
def restore_root_logger():
    root = logging.getLogger()
    handlers, level = root.handlers[:], root.level
    yield
    for handler in root.handlers[:]:
        if handler not in handlers:
            root.removeHandler(handler)
            handler.close()
    root.handlers[:] = handlers
    root.setLevel(level)
