"""
Synthetic graph generators
Seeded uniform G(n, m) and G(n, m) with a planted clique; instances whose
optimum is easy to bound, for tests and benchmarks.
"""

import logging
from typing import FrozenSet, Set, Tuple

import numpy as np

from core.errors import GraphInputError
from core.graph_core import Graph, build_graph

logger = logging.getLogger(__name__)

Edge = Tuple[int, int]


def _sample_edges(n: int, count: int, rng: np.random.Generator, taken: Set[Edge]) -> Set[Edge]:
    """Rejection-sample `count` new distinct pairs not already in `taken`"""
    chosen: Set[Edge] = set()
    while len(chosen) < count:
        u, v = (int(x) for x in rng.integers(0, n, size=2))
        if u == v:
            continue
        edge = (u, v) if u < v else (v, u)
        if edge in taken or edge in chosen:
            continue
        chosen.add(edge)
    return chosen


def _er_edges(n: int, m: int, rng: np.random.Generator, taken: Set[Edge]) -> Set[Edge]:
    capacity = n * (n - 1) // 2 - len(taken)
    if m < 0 or m > capacity:
        raise GraphInputError(f"cannot place {m} edges on {n} nodes ({capacity} free pairs)")
    if m > capacity // 2:
        # dense request: sample the pairs to leave out instead
        left_out = _sample_edges(n, capacity - m, rng, taken)
        return {(u, v) for u in range(n) for v in range(u + 1, n)
                if (u, v) not in left_out and (u, v) not in taken}
    return _sample_edges(n, m, rng, taken)


def gen_er(n: int, m: int, seed: int) -> Graph:
    """Uniform simple G(n, m); identical output for identical seed"""
    if n < 0:
        raise GraphInputError(f"node count must be non-negative, got {n}")
    rng = np.random.default_rng(seed)
    edges = _er_edges(n, m, rng, set())
    logger.info(f"Generated G(n={n}, m={m}) with seed {seed}")
    return build_graph(sorted(edges), nodes=range(n))


def gen_planted(n: int, m_background: int, clique_size: int, seed: int) -> Tuple[Graph, FrozenSet[int]]:
    """G(n, m_background) plus a clique on clique_size random nodes"""
    if not 0 <= clique_size <= n:
        raise GraphInputError(f"clique size must lie in [0, {n}], got {clique_size}")
    rng = np.random.default_rng(seed)
    planted = frozenset(int(v) for v in rng.choice(n, size=clique_size, replace=False))
    members = sorted(planted)
    clique = {(u, v) for i, u in enumerate(members) for v in members[i + 1:]}
    background = _er_edges(n, m_background, rng, clique)
    logger.info(f"Generated planted instance: n={n}, background m={m_background}, "
                f"clique={clique_size}, seed {seed}")
    return build_graph(sorted(clique | background), nodes=range(n)), planted
