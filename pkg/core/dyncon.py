"""
Dynamic Connectivity
Fully dynamic connectivity over a mutable edge set, kept as a hierarchy of
spanning forests: every edge carries a level, F_i holds the tree edges of
level >= i, and a deleted tree edge is replaced by searching non-tree edges
from the smaller side of the cut, promoting what it scans.
Connectivity queries are answered in O(1) from component labels that are
relabelled smaller-side only.
"""

import logging
from collections import defaultdict
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Set, Tuple

from core.errors import ConnectivityContractError
from core.graph_core import Graph

logger = logging.getLogger(__name__)

Edge = Tuple[int, int]


def _key(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


class DynConn:
    """Dynamic connectivity over the induced subgraph of a node scope"""

    def __init__(self, nodes: Iterable[int]):
        self._live: Set[int] = set(nodes)
        self._incident: Dict[int, Set[int]] = {v: set() for v in self._live}
        self._level: Dict[Edge, int] = {}
        self._tree: Set[Edge] = set()
        # forest[i][v]: neighbours of v through tree edges of level >= i
        self._forest: List[Dict[int, Set[int]]] = []
        # nontree[i][v]: neighbours of v through non-tree edges of level exactly i
        self._nontree: List[Dict[int, Set[int]]] = []
        self._ensure_level(max(1, len(self._live).bit_length()))

        self._label: Dict[int, int] = {}
        self._members: Dict[int, Set[int]] = {}
        self._next_label = 0
        for v in self._live:
            self._new_component({v})

        self.replacements_found = 0
        self.splits = 0

    # ------------------------------------------------------------------ setup

    @classmethod
    def from_graph(cls, graph: Graph, scope: Optional[Iterable[int]] = None) -> "DynConn":
        """Initialise with every edge of G[scope] using one depth-first spanning forest"""
        nodes = set(graph.nodes()) if scope is None else set(scope)
        dc = cls(nodes)
        dc._members.clear()
        dc._label.clear()

        for root in sorted(nodes):
            if root in dc._label:
                continue
            component = {root}
            queue = [root]
            dc._label[root] = -1
            while queue:
                v = queue.pop()
                for u in graph.neighbors(v):
                    if u not in nodes or u in dc._label:
                        continue
                    dc._label[u] = -1
                    component.add(u)
                    queue.append(u)
                    dc._add_tree_edge(v, u, 0)
            dc._new_component(component)

        for v, u in graph.edges():
            if v in nodes and u in nodes and _key(v, u) not in dc._level:
                dc._add_nontree_edge(v, u, 0)

        logger.debug(f"DynConn initialised: {len(nodes)} nodes, {len(dc._level)} edges, "
                     f"{len(dc._members)} components")
        return dc

    def _ensure_level(self, level: int):
        while len(self._forest) <= level:
            self._forest.append(defaultdict(set))
            self._nontree.append(defaultdict(set))

    def _new_component(self, nodes: Set[int]) -> int:
        label = self._next_label
        self._next_label += 1
        self._members[label] = nodes
        for v in nodes:
            self._label[v] = label
        return label

    # ------------------------------------------------------------ edge store

    def _add_tree_edge(self, u: int, v: int, level: int):
        self._ensure_level(level)
        key = _key(u, v)
        self._level[key] = level
        self._tree.add(key)
        self._incident[u].add(v)
        self._incident[v].add(u)
        for i in range(level + 1):
            self._forest[i][u].add(v)
            self._forest[i][v].add(u)

    def _add_nontree_edge(self, u: int, v: int, level: int):
        self._ensure_level(level)
        self._level[_key(u, v)] = level
        self._incident[u].add(v)
        self._incident[v].add(u)
        self._nontree[level][u].add(v)
        self._nontree[level][v].add(u)

    def _drop_nontree(self, u: int, v: int, level: int):
        self._nontree[level][u].discard(v)
        self._nontree[level][v].discard(u)

    def _check_node(self, v: int):
        if v not in self._live:
            raise ConnectivityContractError(f"node {v} is not live")

    # ---------------------------------------------------------------- public

    def is_live(self, v: int) -> bool:
        return v in self._live

    def live_neighbours(self, v: int) -> FrozenSet[int]:
        self._check_node(v)
        return frozenset(self._incident[v])

    def degree(self, v: int) -> int:
        self._check_node(v)
        return len(self._incident[v])

    def has_edge(self, u: int, v: int) -> bool:
        return _key(u, v) in self._level

    def live_edges(self) -> FrozenSet[Edge]:
        return frozenset(self._level)

    def is_tree_edge(self, u: int, v: int) -> bool:
        return _key(u, v) in self._tree

    def connected(self, u: int, v: int) -> bool:
        self._check_node(u)
        self._check_node(v)
        return self._label[u] == self._label[v]

    def insert_edge(self, u: int, v: int):
        """Insert (u, v) at level 0; it becomes a tree edge if it joins two components"""
        self._check_node(u)
        self._check_node(v)
        if u == v:
            raise ConnectivityContractError(f"self-loop ({u}, {v}) cannot be inserted")
        if _key(u, v) in self._level:
            raise ConnectivityContractError(f"edge ({u}, {v}) is already live")

        lu, lv = self._label[u], self._label[v]
        if lu == lv:
            self._add_nontree_edge(u, v, 0)
            return
        self._add_tree_edge(u, v, 0)
        small, large = (lu, lv) if len(self._members[lu]) < len(self._members[lv]) else (lv, lu)
        moved = self._members.pop(small)
        for x in moved:
            self._label[x] = large
        self._members[large] |= moved

    def delete_edge(self, u: int, v: int):
        """Delete (u, v); a tree edge is replaced from the highest level that has one"""
        key = _key(u, v)
        level = self._level.pop(key, None)
        if level is None:
            raise ConnectivityContractError(f"edge ({u}, {v}) is not live")
        self._incident[u].discard(v)
        self._incident[v].discard(u)

        if key not in self._tree:
            self._drop_nontree(u, v, level)
            return

        self._tree.discard(key)
        for i in range(level + 1):
            self._forest[i][u].discard(v)
            self._forest[i][v].discard(u)

        for i in range(level, -1, -1):
            smaller = self._smaller_tree(u, v, i)
            self._promote_tree_edges(smaller, i)
            if self._find_replacement(smaller, i):
                self.replacements_found += 1
                return
            if i == 0:
                self._split(smaller)

    def node_removal_disconnects(self, u: int) -> bool:
        """
        True iff deleting u would disconnect two of its live neighbours.
        Deletes u's edges, compares each neighbour against the first one,
        then restores every edge; the live edge set is unchanged afterwards.
        """
        self._check_node(u)
        neighbours = sorted(self._incident[u])
        if not neighbours:
            return False
        for w in neighbours:
            self.delete_edge(u, w)
        try:
            first = neighbours[0]
            return any(not self.connected(first, w) for w in neighbours[1:])
        finally:
            for w in neighbours:
                self.insert_edge(u, w)

    def commit_node_removal(self, u: int):
        """Permanently delete u's incident edges and mark it dead"""
        self._check_node(u)
        for w in sorted(self._incident[u]):
            self.delete_edge(u, w)
        label = self._label.pop(u)
        members = self._members[label]
        members.discard(u)
        if not members:
            del self._members[label]
        del self._incident[u]
        self._live.discard(u)

    # -------------------------------------------------------------- internals

    def _walk(self, start: int, level: int) -> Iterator[int]:
        forest = self._forest[level]
        seen = {start}
        stack = [start]
        while stack:
            x = stack.pop()
            yield x
            for y in forest.get(x, ()):
                if y not in seen:
                    seen.add(y)
                    stack.append(y)

    def _smaller_tree(self, u: int, v: int, level: int) -> Set[int]:
        """Walk both sides of the cut in F_level in lockstep; return the side that ends first"""
        walks = (self._walk(u, level), self._walk(v, level))
        visited: Tuple[Set[int], Set[int]] = (set(), set())
        while True:
            for side in (0, 1):
                nxt = next(walks[side], None)
                if nxt is None:
                    return visited[side]
                visited[side].add(nxt)

    def _promote_tree_edges(self, nodes: Set[int], level: int):
        self._ensure_level(level + 1)
        upper = self._forest[level + 1]
        for x in nodes:
            for y in self._forest[level].get(x, ()):
                if x < y and self._level[(x, y)] == level:
                    self._level[(x, y)] = level + 1
                    upper[x].add(y)
                    upper[y].add(x)

    def _find_replacement(self, nodes: Set[int], level: int) -> bool:
        nontree = self._nontree[level]
        for x in nodes:
            for y in sorted(nontree.get(x, ())):
                if y in nodes:
                    # both ends on the small side: promote so it is never scanned here again
                    self._drop_nontree(x, y, level)
                    self._add_nontree_edge(x, y, level + 1)
                    continue
                self._drop_nontree(x, y, level)
                self._tree.add(_key(x, y))
                self._level[_key(x, y)] = level
                for i in range(level + 1):
                    self._forest[i][x].add(y)
                    self._forest[i][y].add(x)
                return True
        return False

    def _split(self, nodes: Set[int]):
        old = self._label[next(iter(nodes))]
        self._members[old] -= nodes
        self._new_component(set(nodes))
        self.splits += 1
