"""
Exact maximum Flexi-clique search
Connectivity-preserving branch and bound over (S, C^r, C^un, D):
  S     partial set, always connected
  C^r   candidates adjacent to S, kept in ascending adjusted-degree order
  C^un  candidates not yet adjacent to S
  D     excluded nodes
Pruning comes from six rules plus a best-bound cut on the remaining scope;
the incumbent seeds from the Flexi-Prune heuristic.
"""

import logging
import time
from bisect import insort
from collections import deque
from dataclasses import dataclass, field, fields
from typing import Dict, FrozenSet, Iterator, List, Optional, Set, Tuple

from core.errors import InvariantViolation
from core.flexi_math import (
    Tau,
    degree_diameter_bound,
    floor_invpow,
    floor_pow,
    is_flexi,
    theta as theta_for,
)
from core.fpa import FlexiResult, run_fpa
from core.graph_core import (
    INF,
    CoreDecomposition,
    Graph,
    bfs_distances,
    core_decomposition,
    induced_degrees,
    is_connected_within,
)
from solver_config import RuleSet, SolverConfig

logger = logging.getLogger(__name__)


@dataclass
class SearchNode:
    """One branch state; the scope S ∪ C^r ∪ C^un is exactly the key set of adj_degree"""
    partial: Set[int]
    reachable: List[Tuple[Tuple[int, int], int]]
    unreachable: Set[int]
    excluded: Set[int]
    adj_degree: Dict[int, int]
    dist: Dict[int, float] = field(default_factory=dict)
    depth: int = 0

    def copy(self) -> "SearchNode":
        return SearchNode(
            partial=set(self.partial),
            reachable=list(self.reachable),
            unreachable=set(self.unreachable),
            excluded=set(self.excluded),
            adj_degree=dict(self.adj_degree),
            dist=dict(self.dist),
            depth=self.depth,
        )

    @property
    def scope_size(self) -> int:
        return len(self.adj_degree)

    def reachable_nodes(self) -> List[int]:
        """C^r in branching order, skipping entries removed since insertion"""
        return [v for _, v in self.reachable if v in self.adj_degree and v not in self.partial]

    def candidates(self) -> List[int]:
        return self.reachable_nodes() + sorted(self.unreachable)

    def min_partial_degree(self) -> float:
        if not self.partial:
            return INF
        return min(self.adj_degree[v] for v in self.partial)

    def remove(self, graph: Graph, u: int):
        """Move candidate u into D, lowering its in-scope neighbours' adjusted degree"""
        del self.adj_degree[u]
        for w in graph.neighbors(u):
            if w in self.adj_degree:
                self.adj_degree[w] -= 1
        self.unreachable.discard(u)
        self.excluded.add(u)


@dataclass
class Incumbent:
    best: FrozenSet[int]
    theta: int
    alive: Optional[FrozenSet[int]] = None


@dataclass
class PruneStats:
    explored_nodes: int = 0
    prunes_rule1: int = 0
    prunes_rule2: int = 0
    prunes_rule3: int = 0
    prunes_rule4: int = 0
    prunes_rule5: int = 0
    prunes_rule6: int = 0
    prunes_scope_bound: int = 0
    incumbent_updates: int = 0
    invariant_checks: int = 0

    def as_dict(self) -> Dict[str, int]:
        return {f.name: getattr(self, f.name) for f in fields(self)}

    def prunes(self, rule: int) -> int:
        return getattr(self, f"prunes_rule{rule}")

    def count(self, rule: int, amount: int = 1):
        name = f"prunes_rule{rule}"
        setattr(self, name, getattr(self, name) + amount)


@dataclass(frozen=True)
class FollowerSet:
    """Nodes dropped by an exclusion cascade; kill means the cascade reached S"""
    members: FrozenSet[int]
    kill: bool = False


# ---------------------------------------------------------------- rule checks

def rule1_prune(node: SearchNode, theta: int) -> bool:
    return bool(node.partial) and node.min_partial_degree() < theta


def rule2_prune(node: SearchNode, tau: Tau, graph: Graph) -> bool:
    """|S| cannot exceed floor((min d_a(S) + 1) ** (1/tau))"""
    if not node.partial:
        return False
    f_max = floor_invpow(int(node.min_partial_degree()) + 1, tau, cap=graph.n + 1)
    size = len(node.partial)
    if size > f_max:
        return True
    return size == f_max and not is_flexi(graph, node.partial, tau)


def scope_bound_prune(node: SearchNode, incumbent: Incumbent) -> bool:
    return node.scope_size <= len(incumbent.best)


def rule6_reduce(graph: Graph, theta: int, cores: Optional[CoreDecomposition] = None) -> FrozenSet[int]:
    """theta-core of the whole graph"""
    if cores is None:
        cores = core_decomposition(graph)
    return cores.core_nodes(theta)


def update_distances(graph: Graph, node: SearchNode, newly_added: int):
    """Raise every in-scope label to the hop distance from the newly added S member"""
    fresh = bfs_distances(graph, newly_added, set(node.adj_degree))
    for u, d in fresh.items():
        node.dist[u] = max(node.dist.get(u, -1), d)


def _filter_reason(node: SearchNode, u: int, theta: int, tau: Tau, rules: RuleSet,
                   scope_size: int, min_partial: float) -> Optional[int]:
    """0 for unreachable, 3/4/5 for the rule that removes u, None to keep it"""
    d = node.dist.get(u, INF)
    if d == INF:
        return 0
    if rules.rule3 or rules.rule4:
        bound = degree_diameter_bound(theta, int(d))
        if rules.rule3 and bound > scope_size:
            return 3
        if rules.rule4 and floor_pow(bound, tau) > min_partial:
            return 4
    if rules.rule5 and node.adj_degree[u] < theta:
        return 5
    return None


def rule34_filter(graph: Graph, node: SearchNode, theta: int, tau: Tau,
                  rules: Optional[RuleSet] = None,
                  stats: Optional[PruneStats] = None) -> Tuple[List[int], List[int]]:
    """
    Drop candidates that cannot share a large enough Flexi-clique with S:
    unreachable ones, those the degree-diameter size bound rules out (Rule 3),
    those whose bound would demand more degree than S has (Rule 4), and
    candidates whose adjusted degree fell below theta on the way. Runs to a
    fixpoint since every removal shrinks the scope and the degrees.
    """
    rules = rules or RuleSet()
    removed: List[int] = []
    changed = True
    while changed:
        changed = False
        min_partial = node.min_partial_degree()
        for u in node.candidates():
            if u not in node.adj_degree:
                continue
            reason = _filter_reason(node, u, theta, tau, rules, node.scope_size, min_partial)
            if reason is None:
                continue
            node.remove(graph, u)
            removed.append(u)
            changed = True
            if stats is not None and reason:
                stats.count(reason)
            min_partial = node.min_partial_degree()
    return node.candidates(), removed


def compute_followers(graph: Graph, node: SearchNode, excluded: int, theta: int) -> FollowerSet:
    """Exclude a node and cascade: anything whose adjusted degree drops below theta follows it"""
    followers: Set[int] = set()
    node.remove(graph, excluded)
    pending = deque([excluded])
    while pending:
        x = pending.popleft()
        for w in graph.neighbors(x):
            if w not in node.adj_degree or node.adj_degree[w] >= theta:
                continue
            if w in node.partial:
                return FollowerSet(frozenset(followers), kill=True)
            node.remove(graph, w)
            followers.add(w)
            pending.append(w)
    return FollowerSet(frozenset(followers))


class _SearchTimeout(Exception):
    pass


class FlexiPruneSolver:
    """Branch and bound for the maximum Flexi-clique of one graph"""

    ALGORITHM_TAG = "eba"

    def __init__(self, graph: Graph, tau: Tau, config: Optional[SolverConfig] = None):
        self.graph = graph
        self.tau = tau
        self.config = config or SolverConfig()
        self.rules = self.config.rules
        self.stats = PruneStats()
        self.cores = core_decomposition(graph)
        self.incumbent = Incumbent(best=frozenset(), theta=theta_for(0, tau))
        self._deadline: Optional[float] = None
        self._sequence = 0

    # ---------------------------------------------------------- incumbent

    def _update_incumbent(self, members: Set[int]):
        self.incumbent.best = frozenset(members)
        new_theta = theta_for(len(members), self.tau)
        if new_theta != self.incumbent.theta:
            logger.debug(f"theta refreshed {self.incumbent.theta} -> {new_theta}")
        self.incumbent.theta = new_theta
        if self.rules.rule6:
            before = len(self.incumbent.alive) if self.incumbent.alive is not None else self.graph.n
            self.incumbent.alive = rule6_reduce(self.graph, new_theta, self.cores)
            self.stats.count(6, before - len(self.incumbent.alive))
        self.stats.incumbent_updates += 1
        logger.info(f"New incumbent of size {len(members)} (theta={new_theta}, "
                    f"explored={self.stats.explored_nodes})")

    # ---------------------------------------------------------- tree nodes

    def initial_node(self) -> SearchNode:
        """Seed the incumbent, apply the global reduction and build the root (∅, ∅, alive, ∅)"""
        if self.config.heuristic_seed:
            seed = run_fpa(self.graph, self.tau)
            if seed.valid:
                self._update_incumbent(set(seed.members))
        if self.incumbent.alive is None and self.rules.rule6:
            self.incumbent.alive = rule6_reduce(self.graph, self.incumbent.theta, self.cores)
            self.stats.count(6, self.graph.n - len(self.incumbent.alive))

        scope = set(self.incumbent.alive) if self.incumbent.alive is not None else set(self.graph.nodes())
        return SearchNode(
            partial=set(),
            reachable=[],
            unreachable=scope,
            excluded=set(self.graph.nodes()) - scope,
            adj_degree=induced_degrees(self.graph, scope),
        )

    def _order_key(self, node: SearchNode, v: int) -> Tuple[int, int]:
        if self.rules.sort_candidates:
            return (node.adj_degree[v], v)
        self._sequence += 1
        return (self._sequence, v)

    def _spawn(self, parent: SearchNode, base: SearchNode, v: int) -> Optional[SearchNode]:
        graph = self.graph
        child = base.copy()
        child.depth = parent.depth + 1

        # Step 1: S_i = S ∪ {v_i}, pull v_i's unreachable neighbours into C^r
        child.partial.add(v)
        child.unreachable.discard(v)
        child.reachable = [entry for entry in child.reachable if entry[1] != v]
        for u in graph.neighbors(v):
            if u in child.unreachable:
                child.unreachable.discard(u)
                insort(child.reachable, (self._order_key(child, u), u))

        # Step 2: incumbent check as soon as S_i exists
        if len(child.partial) > len(self.incumbent.best) and is_flexi(graph, child.partial, self.tau):
            self._update_incumbent(child.partial)

        # Step 3: restrict to the surviving theta-core
        alive = self.incumbent.alive
        if self.rules.rule6 and alive is not None:
            if not child.partial <= alive:
                self.stats.count(6)
                return None
            for u in [u for u in child.adj_degree if u not in alive]:
                child.remove(graph, u)

        # Step 4: distance labels, then the distance and degree filter
        update_distances(graph, child, v)
        rule34_filter(graph, child, self.incumbent.theta, self.tau, self.rules, self.stats)

        if self.config.debug_checks:
            self._check_descent(parent, child)
        return child

    def make_children(self, node: SearchNode) -> Iterator[SearchNode]:
        """
        Children in branch order; after each child's subtree the picked node
        (and, with Rule 5, its followers) moves into D for every later sibling.
        """
        if node.partial:
            order = node.reachable_nodes()
        elif self.rules.sort_candidates:
            order = sorted(node.unreachable, key=lambda v: (node.adj_degree[v], v))
        else:
            order = sorted(node.unreachable)

        base = node.copy()
        previous_excluded: Optional[Set[int]] = None
        for v in order:
            if v not in base.adj_degree:
                continue
            if scope_bound_prune(base, self.incumbent):
                self.stats.prunes_scope_bound += 1
                return
            if self.rules.rule1 and rule1_prune(base, self.incumbent.theta):
                self.stats.count(1)
                return

            if self.config.debug_checks and previous_excluded is not None:
                self._check(previous_excluded < base.excluded, "sibling exclusion sets must strictly grow")
            previous_excluded = set(base.excluded)

            child = self._spawn(node, base, v)
            if child is not None:
                yield child

            if self.rules.rule5:
                followers = compute_followers(self.graph, base, v, self.incumbent.theta)
                if followers.kill:
                    self.stats.count(5)
                    return
                if followers.members:
                    self.stats.count(5, len(followers.members))
            else:
                base.remove(self.graph, v)

    def _enter(self, node: SearchNode) -> bool:
        """Entry checks; True when the node should branch"""
        self.stats.explored_nodes += 1
        if self._deadline is not None and time.perf_counter() > self._deadline:
            raise _SearchTimeout()
        if self.stats.explored_nodes % self.config.progress_every == 0:
            logger.debug(f"EBA progress: explored={self.stats.explored_nodes}, depth={node.depth}, "
                         f"best={len(self.incumbent.best)}, theta={self.incumbent.theta}")
        if self.config.debug_checks:
            self._check_node(node)

        if scope_bound_prune(node, self.incumbent):
            self.stats.prunes_scope_bound += 1
            return False
        if not node.partial:
            return True
        if self.rules.rule1 and rule1_prune(node, self.incumbent.theta):
            self.stats.count(1)
            return False
        if self.rules.rule2 and rule2_prune(node, self.tau, self.graph):
            self.stats.count(2)
            return False
        # leaf: nothing left that touches S
        return bool(node.reachable_nodes())

    # ---------------------------------------------------------------- run

    def solve(self) -> Tuple[FlexiResult, PruneStats]:
        start = time.perf_counter()
        if self.config.timeout_s is not None:
            self._deadline = start + self.config.timeout_s
        logger.info(f"EBA starting: n={self.graph.n}, m={self.graph.m}, tau={self.tau}, "
                    f"rules={self.rules.mask}")

        timed_out = False
        try:
            root = self.initial_node()
            if self._enter(root):
                stack = [self.make_children(root)]
                while stack:
                    child = next(stack[-1], None)
                    if child is None:
                        stack.pop()
                    elif self._enter(child):
                        stack.append(self.make_children(child))
        except _SearchTimeout:
            timed_out = True
            logger.warning(f"EBA time budget of {self.config.timeout_s}s expired; "
                           f"returning incumbent of size {len(self.incumbent.best)}")

        runtime_ms = (time.perf_counter() - start) * 1000.0
        best = self.incumbent.best
        result = FlexiResult.build(
            self.graph, best, bool(best), runtime_ms, self.ALGORITHM_TAG,
            optimal=not timed_out, timed_out=timed_out,
        )
        logger.info(f"EBA finished: size={result.size}, {runtime_ms:.2f} ms, "
                    f"explored={self.stats.explored_nodes}")
        return result, self.stats

    # ------------------------------------------------------- debug checks

    def _check(self, condition: bool, message: str):
        self.stats.invariant_checks += 1
        if not condition:
            raise InvariantViolation(message)

    def _check_node(self, node: SearchNode):
        graph = self.graph
        reachable = set(node.reachable_nodes())
        partial, unreachable, excluded = node.partial, node.unreachable, node.excluded
        self._check(not (partial & reachable or partial & unreachable or reachable & unreachable
                         or excluded & (partial | reachable | unreachable)),
                    "S, C^r, C^un and D must be pairwise disjoint")
        scope = partial | reachable | unreachable
        self._check(scope == set(node.adj_degree), "scope must equal S ∪ C^r ∪ C^un")
        if partial:
            self._check(is_connected_within(graph, partial), "G[S] must stay connected")
        self._check(all(graph.neighbor_set(v) & partial for v in reachable),
                    "every C^r member must touch S")
        self._check(not any(graph.neighbor_set(v) & partial for v in unreachable),
                    "no C^un member may touch S")
        self._check(induced_degrees(graph, scope) == node.adj_degree,
                    "adjusted degrees must match G[S ∪ C^r ∪ C^un]")

    def _check_descent(self, parent: SearchNode, child: SearchNode):
        self._check(parent.partial < child.partial, "S must strictly grow along a path")
        self._check(parent.excluded <= child.excluded, "D must never shrink along a path")


def run_eba(graph: Graph, tau: Tau, config: Optional[SolverConfig] = None) -> Tuple[FlexiResult, PruneStats]:
    return FlexiPruneSolver(graph, tau, config).solve()


# Example usage
if __name__ == "__main__":
    from core.flexi_math import parse_tau
    from core.graph_core import build_graph

    logging.basicConfig(level=logging.INFO)
    k33 = build_graph([(a, b) for a in range(3) for b in range(3, 6)])

    result, stats = run_eba(k33, parse_tau("3/4"), SolverConfig(debug_checks=True))
    print(f"Size: {result.size} members={sorted(result.members)} optimal={result.optimal}")
    for name, value in stats.as_dict().items():
        print(f"  {name}: {value}")
