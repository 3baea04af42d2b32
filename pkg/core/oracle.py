"""
Brute-force reference solver
Enumerates every node subset of a small graph. Slow and obviously correct,
it is the ground truth the branch-and-bound search is tested against.
"""

import logging
import time
from itertools import combinations
from typing import List, Optional, Set, Tuple

from core.errors import OracleSizeError
from core.flexi_math import Tau, floor_pow
from core.fpa import FlexiResult
from core.graph_core import Graph

logger = logging.getLogger(__name__)

DEFAULT_NODE_CAP = 20


def _popcount(mask: int) -> int:
    return bin(mask).count("1")


def _adjacency_masks(graph: Graph) -> List[int]:
    masks = []
    for v in graph.nodes():
        mask = 0
        for u in graph.neighbors(v):
            mask |= 1 << u
        masks.append(mask)
    return masks


def _subset_is_flexi(members: Tuple[int, ...], adjacency: List[int], threshold: int) -> bool:
    mask = 0
    for v in members:
        mask |= 1 << v
    for v in members:
        if _popcount(adjacency[v] & mask) < threshold:
            return False

    # plain BFS over the induced subgraph
    seen = 1 << members[0]
    frontier = seen
    while frontier:
        reach = 0
        remaining = frontier
        while remaining:
            low = remaining & -remaining
            reach |= adjacency[low.bit_length() - 1]
            remaining ^= low
        frontier = reach & mask & ~seen
        seen |= frontier
    return seen == mask


def _check_cap(graph: Graph, node_cap: int):
    if graph.n > node_cap:
        raise OracleSizeError(f"oracle refuses graphs above {node_cap} nodes (got {graph.n})")


def _first_of_size(graph: Graph, tau: Tau, size: int, adjacency: List[int]) -> Optional[Tuple[int, ...]]:
    threshold = floor_pow(size, tau)
    for members in combinations(range(graph.n), size):
        if _subset_is_flexi(members, adjacency, threshold):
            return members
    return None


def brute_force_max_flexi(graph: Graph, tau: Tau, node_cap: int = DEFAULT_NODE_CAP) -> FlexiResult:
    """Largest Flexi-clique by exhaustive search; ties go to the lexicographically smallest member tuple"""
    _check_cap(graph, node_cap)
    start = time.perf_counter()
    adjacency = _adjacency_masks(graph)

    best: Tuple[int, ...] = ()
    for size in range(graph.n, 1, -1):
        found = _first_of_size(graph, tau, size, adjacency)
        if found is not None:
            best = found
            break

    runtime_ms = (time.perf_counter() - start) * 1000.0
    logger.info(f"Oracle finished: size={len(best)}, n={graph.n}, {runtime_ms:.2f} ms")
    return FlexiResult.build(graph, best, bool(best), runtime_ms, "oracle", optimal=True)


def all_flexi_sizes(graph: Graph, tau: Tau, node_cap: int = DEFAULT_NODE_CAP) -> Set[int]:
    """Every size s for which some Flexi-clique of size s exists"""
    _check_cap(graph, node_cap)
    adjacency = _adjacency_masks(graph)
    return {size for size in range(2, graph.n + 1)
            if _first_of_size(graph, tau, size, adjacency) is not None}
