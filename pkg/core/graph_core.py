"""
Graph Core
Immutable simple undirected graph over dense integer ids, plus the
component, distance, core and articulation primitives every solver uses
"""

import logging
import math
import numbers
from collections import deque
from dataclasses import dataclass
from typing import Dict, FrozenSet, Hashable, Iterable, Iterator, List, Optional, Sequence, Set, Tuple

import networkx as nx

from core.errors import GraphSizeError

logger = logging.getLogger(__name__)

INF = math.inf
MAX_NODES = 2 ** 31 - 1

NodeSet = FrozenSet[int]


class Graph:
    """Simple undirected graph with sorted adjacency and an external-id table"""

    __slots__ = ("_adjacency", "_neighbor_sets", "_labels", "_index", "_m")

    def __init__(self, adjacency: Sequence[Sequence[int]], labels: Optional[Sequence[Hashable]] = None):
        n = len(adjacency)
        self._adjacency: Tuple[Tuple[int, ...], ...] = tuple(tuple(sorted(row)) for row in adjacency)
        self._neighbor_sets: Tuple[FrozenSet[int], ...] = tuple(frozenset(row) for row in self._adjacency)
        self._labels: Tuple[Hashable, ...] = tuple(labels) if labels is not None else tuple(range(n))
        if len(self._labels) != n:
            raise ValueError(f"label table has {len(self._labels)} entries for {n} nodes")
        self._index: Dict[Hashable, int] = {label: i for i, label in enumerate(self._labels)}

        total = 0
        for v, row in enumerate(self._adjacency):
            if len(self._neighbor_sets[v]) != len(row):
                raise ValueError(f"duplicate neighbours at node {v}")
            for u in row:
                if u == v:
                    raise ValueError(f"self-loop at node {v}")
                if not 0 <= u < n or v not in self._neighbor_sets[u]:
                    raise ValueError(f"asymmetric or out-of-range edge ({v}, {u})")
            total += len(row)
        self._m = total // 2

    @property
    def n(self) -> int:
        return len(self._adjacency)

    @property
    def m(self) -> int:
        return self._m

    @property
    def adjacency(self) -> Tuple[Tuple[int, ...], ...]:
        return self._adjacency

    @property
    def labels(self) -> Tuple[Hashable, ...]:
        return self._labels

    def nodes(self) -> range:
        return range(self.n)

    def neighbors(self, v: int) -> Tuple[int, ...]:
        return self._adjacency[v]

    def neighbor_set(self, v: int) -> FrozenSet[int]:
        return self._neighbor_sets[v]

    def degree(self, v: int) -> int:
        return len(self._adjacency[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._neighbor_sets[u]

    def edges(self) -> Iterator[Tuple[int, int]]:
        for v, row in enumerate(self._adjacency):
            for u in row:
                if v < u:
                    yield v, u

    def label(self, v: int) -> Hashable:
        return self._labels[v]

    def index_of(self, label: Hashable) -> int:
        return self._index[label]

    def external(self, members: Iterable[int]) -> List[Hashable]:
        """Map internal ids back through the load-time remap table"""
        return [self._labels[v] for v in sorted(members)]

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(self.nodes())
        g.add_edges_from(self.edges())
        return g

    def __len__(self) -> int:
        return self.n

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


@dataclass(frozen=True)
class CoreDecomposition:
    """Core number of every node"""
    core_number: Tuple[int, ...]
    max_core: int

    def core_nodes(self, k: int) -> NodeSet:
        """Node set of the k-core"""
        return frozenset(v for v, c in enumerate(self.core_number) if c >= k)


def _label_key(label: Hashable) -> Tuple[int, int, str]:
    if isinstance(label, numbers.Integral):
        return (0, int(label), "")
    return (1, 0, str(label))


def _normalise(label: Hashable) -> Hashable:
    return int(label) if isinstance(label, numbers.Integral) else label


def build_graph_counted(edge_pairs: Iterable[Tuple[Hashable, Hashable]],
                        nodes: Optional[Iterable[Hashable]] = None) -> Tuple[Graph, int, int]:
    """build_graph that also reports (self-loops dropped, duplicate edges collapsed)"""
    pairs = [(_normalise(a), _normalise(b)) for a, b in edge_pairs]
    labels = {label for pair in pairs for label in pair}
    if nodes is not None:
        labels.update(_normalise(label) for label in nodes)
    if len(labels) > MAX_NODES:
        raise GraphSizeError(f"{len(labels)} distinct node ids exceed the limit of {MAX_NODES}")

    ordered = sorted(labels, key=_label_key)
    index = {label: i for i, label in enumerate(ordered)}
    neighbor_sets: List[Set[int]] = [set() for _ in ordered]

    loops = duplicates = 0
    for a, b in pairs:
        u, v = index[a], index[b]
        if u == v:
            loops += 1
            continue
        if v in neighbor_sets[u]:
            duplicates += 1
            continue
        neighbor_sets[u].add(v)
        neighbor_sets[v].add(u)

    return Graph(neighbor_sets, ordered), loops, duplicates


def build_graph(edge_pairs: Iterable[Tuple[Hashable, Hashable]],
                nodes: Optional[Iterable[Hashable]] = None) -> Graph:
    """Remap ids densely (sorted, integers first), drop self-loops, collapse duplicates"""
    graph, loops, duplicates = build_graph_counted(edge_pairs, nodes)
    if loops or duplicates:
        logger.debug(f"build_graph dropped {loops} self-loops and {duplicates} duplicate edges")
    return graph


def graph_from_networkx(nx_graph: nx.Graph) -> Graph:
    return build_graph(nx_graph.edges(), nodes=nx_graph.nodes())


def _scope_set(graph: Graph, scope: Optional[Iterable[int]]):
    if scope is None:
        return set(graph.nodes())
    return scope if isinstance(scope, (set, frozenset)) else set(scope)


def induced_degrees(graph: Graph, members) -> Dict[int, int]:
    """Degree of every member inside G[members]"""
    neighbor_sets = graph._neighbor_sets
    return {v: len(neighbor_sets[v] & members) for v in members}


def induced_edge_count(graph: Graph, members) -> int:
    members = _scope_set(graph, members)
    return sum(induced_degrees(graph, members).values()) // 2


def is_connected_within(graph: Graph, members) -> bool:
    if not members:
        return False
    start = next(iter(members))
    seen = {start}
    queue = deque([start])
    while queue:
        v = queue.popleft()
        for u in graph.neighbors(v):
            if u in members and u not in seen:
                seen.add(u)
                queue.append(u)
    return len(seen) == len(members)


def connected_components(graph: Graph, scope: Optional[Iterable[int]] = None) -> List[NodeSet]:
    """Maximal connected sets of G[scope], ordered by smallest member"""
    scope = _scope_set(graph, scope)
    seen: Set[int] = set()
    components = []
    for start in sorted(scope):
        if start in seen:
            continue
        seen.add(start)
        component = [start]
        queue = deque([start])
        while queue:
            v = queue.popleft()
            for u in graph.neighbors(v):
                if u in scope and u not in seen:
                    seen.add(u)
                    component.append(u)
                    queue.append(u)
        components.append(frozenset(component))
    return components


def largest_component(graph: Graph, scope: Optional[Iterable[int]] = None) -> NodeSet:
    """Largest connected component of G[scope]; ties go to the smallest member id"""
    components = connected_components(graph, scope)
    if not components:
        return frozenset()
    # components arrive sorted by smallest member, max keeps the first among equals
    return max(components, key=len)


def bfs_distances(graph: Graph, source: int, scope: Optional[Iterable[int]] = None) -> Dict[int, float]:
    """Hop distances from source inside G[scope]; unreachable members get INF"""
    scope = _scope_set(graph, scope)
    if source not in scope:
        raise ValueError(f"source {source} is outside the scope")
    distances: Dict[int, float] = {v: INF for v in scope}
    distances[source] = 0
    queue = deque([source])
    while queue:
        v = queue.popleft()
        step = distances[v] + 1
        for u in graph.neighbors(v):
            if u in scope and distances[u] == INF:
                distances[u] = step
                queue.append(u)
    return distances


def core_decomposition(graph: Graph) -> CoreDecomposition:
    """Bucket-based peeling in O(n + m)"""
    n = graph.n
    if n == 0:
        return CoreDecomposition(core_number=(), max_core=0)
    adjacency = graph.adjacency
    degree = [len(row) for row in adjacency]
    max_degree = max(degree)

    bins = [0] * (max_degree + 1)
    for d in degree:
        bins[d] += 1
    start = 0
    for d in range(max_degree + 1):
        count = bins[d]
        bins[d] = start
        start += count

    position = [0] * n
    order = [0] * n
    for v in range(n):
        position[v] = bins[degree[v]]
        order[position[v]] = v
        bins[degree[v]] += 1
    for d in range(max_degree, 0, -1):
        bins[d] = bins[d - 1]
    bins[0] = 0

    for i in range(n):
        v = order[i]
        for u in adjacency[v]:
            if degree[u] > degree[v]:
                du = degree[u]
                pu = position[u]
                pw = bins[du]
                w = order[pw]
                if u != w:
                    position[u], position[w] = pw, pu
                    order[pu], order[pw] = w, u
                bins[du] += 1
                degree[u] -= 1

    return CoreDecomposition(core_number=tuple(degree), max_core=max(degree))


def articulation_points(graph: Graph, scope: Optional[Iterable[int]] = None) -> Set[int]:
    """Cut vertices of G[scope] by one iterative low-link DFS per component"""
    scope = _scope_set(graph, scope)
    discovery: Dict[int, int] = {}
    low: Dict[int, int] = {}
    points: Set[int] = set()
    counter = 0

    for root in sorted(scope):
        if root in discovery:
            continue
        discovery[root] = low[root] = counter
        counter += 1
        root_children = 0
        stack = [(root, -1, iter(graph.neighbors(root)))]
        while stack:
            v, parent, neighbours = stack[-1]
            descended = False
            for w in neighbours:
                if w not in scope:
                    continue
                if w not in discovery:
                    discovery[w] = low[w] = counter
                    counter += 1
                    stack.append((w, v, iter(graph.neighbors(w))))
                    descended = True
                    break
                if w != parent:
                    low[v] = min(low[v], discovery[w])
            if descended:
                continue
            stack.pop()
            if parent == -1:
                continue
            low[parent] = min(low[parent], low[v])
            if parent == root:
                root_children += 1
            elif low[v] >= discovery[parent]:
                points.add(parent)
        if root_children > 1:
            points.add(root)

    return points
