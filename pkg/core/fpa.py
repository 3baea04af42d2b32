"""
Flexi-Prune heuristic
Core-seeded, connectivity-aware minimum-degree peeling. Fast, always returns
either a valid Flexi-clique or an explicit empty failure result.
"""

import logging
import time
from collections import defaultdict
from dataclasses import dataclass
from typing import Dict, FrozenSet, Hashable, Iterable, List, Optional, Set, Tuple

from core.dyncon import DynConn
from core.errors import InvariantViolation
from core.flexi_math import Tau, floor_pow, is_flexi
from core.graph_core import (
    Graph,
    connected_components,
    core_decomposition,
    induced_degrees,
    induced_edge_count,
    largest_component,
)

logger = logging.getLogger(__name__)


@dataclass
class FlexiResult:
    members: FrozenSet[int]
    size: int
    valid: bool
    runtime_ms: float
    algorithm_tag: str
    min_degree: int = 0
    density: float = 0.0
    optimal: Optional[bool] = None
    timed_out: bool = False

    @classmethod
    def build(cls, graph: Graph, members: Iterable[int], valid: bool, runtime_ms: float,
              algorithm_tag: str, optimal: Optional[bool] = None, timed_out: bool = False) -> "FlexiResult":
        members = frozenset(members)
        min_degree, density = subgraph_profile(graph, members)
        return cls(
            members=members,
            size=len(members),
            valid=valid,
            runtime_ms=runtime_ms,
            algorithm_tag=algorithm_tag,
            min_degree=min_degree,
            density=density,
            optimal=optimal,
            timed_out=timed_out,
        )

    def external_members(self, graph: Graph) -> List[Hashable]:
        return graph.external(self.members)


def subgraph_profile(graph: Graph, members: FrozenSet[int]) -> Tuple[int, float]:
    """(minimum internal degree, edge density) of G[members]"""
    if not members:
        return 0, 0.0
    degrees = induced_degrees(graph, members)
    size = len(members)
    if size < 2:
        return 0, 0.0
    edges = induced_edge_count(graph, members)
    return min(degrees.values()), edges / (size * (size - 1) / 2)


class FlexiPruneHeuristic:
    """Seed from the core hierarchy, then peel non-articulation nodes of least degree"""

    ALGORITHM_TAG = "fpa"

    def __init__(self, tau: Tau, debug_checks: bool = False):
        self.tau = tau
        self.debug_checks = debug_checks
        self.peels = 0
        self.seed_level: Optional[int] = None

    def select_seed(self, graph: Graph) -> FrozenSet[int]:
        """Smallest k whose k-core LCC is a Flexi-clique picks the (k-1)-core component around it"""
        if graph.m == 0:
            return frozenset()

        cores = core_decomposition(graph)
        for k in range(1, cores.max_core + 1):
            lcc = largest_component(graph, cores.core_nodes(k))
            if lcc and is_flexi(graph, lcc, self.tau):
                self.seed_level = k
                anchor = min(lcc)
                for component in connected_components(graph, cores.core_nodes(k - 1)):
                    if anchor in component:
                        logger.debug(f"FPA seed: k*={k}, lcc={len(lcc)}, seed={len(component)}")
                        return component

        self.seed_level = None
        seed = largest_component(graph, cores.core_nodes(cores.max_core))
        logger.debug(f"FPA seed: no qualifying core, falling back to max-core LCC "
                     f"(k={cores.max_core}, size={len(seed)})")
        return seed

    def run(self, graph: Graph) -> FlexiResult:
        start = time.perf_counter()
        members, valid = self._peel(graph, self.select_seed(graph))
        runtime_ms = (time.perf_counter() - start) * 1000.0

        if not valid:
            logger.info(f"FPA found no Flexi-clique at tau={self.tau} ({runtime_ms:.2f} ms)")
            return FlexiResult.build(graph, (), False, runtime_ms, self.ALGORITHM_TAG)

        logger.info(f"FPA finished: size={len(members)}, peels={self.peels}, {runtime_ms:.2f} ms")
        return FlexiResult.build(graph, members, True, runtime_ms, self.ALGORITHM_TAG)

    def _peel(self, graph: Graph, seed: FrozenSet[int]) -> Tuple[FrozenSet[int], bool]:
        current: Set[int] = set(seed)
        if len(current) < 2:
            return frozenset(), False

        degree: Dict[int, int] = induced_degrees(graph, current)
        buckets: Dict[int, Set[int]] = defaultdict(set)
        for v, d in degree.items():
            buckets[d].add(v)
        connectivity = DynConn.from_graph(graph, current)

        while len(current) >= 2:
            levels = sorted(d for d, bucket in buckets.items() if bucket)
            if levels[0] >= floor_pow(len(current), self.tau):
                logger.debug(f"FPA connectivity: {connectivity.replacements_found} replacements, "
                             f"{connectivity.splits} splits")
                return frozenset(current), True

            victim = self._first_removable(levels, buckets, connectivity)
            if victim is None:
                return frozenset(), False

            connectivity.commit_node_removal(victim)
            current.discard(victim)
            buckets[degree.pop(victim)].discard(victim)
            for u in graph.neighbors(victim):
                if u in current:
                    buckets[degree[u]].discard(u)
                    degree[u] -= 1
                    buckets[degree[u]].add(u)
            self.peels += 1
            logger.debug(f"FPA peeled node {victim}, {len(current)} remain")

            if self.debug_checks and len(connected_components(graph, current)) > 1:
                raise InvariantViolation(f"FPA peel of node {victim} disconnected the candidate set")

        return frozenset(), False

    @staticmethod
    def _first_removable(levels: List[int], buckets: Dict[int, Set[int]], connectivity: DynConn) -> Optional[int]:
        for d in levels:
            for v in sorted(buckets[d]):
                if not connectivity.node_removal_disconnects(v):
                    return v
        return None


def select_seed(graph: Graph, tau: Tau) -> FrozenSet[int]:
    return FlexiPruneHeuristic(tau).select_seed(graph)


def run_fpa(graph: Graph, tau: Tau, debug_checks: bool = False) -> FlexiResult:
    return FlexiPruneHeuristic(tau, debug_checks=debug_checks).run(graph)


# Example usage
if __name__ == "__main__":
    from core.flexi_math import parse_tau
    from core.graph_core import build_graph

    logging.basicConfig(level=logging.DEBUG)
    k5 = [(a, b) for a in range(5) for b in range(a + 1, 5)]
    demo = build_graph(k5 + [(5, 2), (5, 3), (5, 4), (6, 3), (6, 4), (6, 5)])

    result = run_fpa(demo, parse_tau("3/4"))
    print(f"Valid: {result.valid}")
    print(f"Members: {sorted(result.members)} (min degree {result.min_degree}, density {result.density:.2f})")
