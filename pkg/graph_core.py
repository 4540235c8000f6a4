#!/usr/bin/env python3
"""
Graph core - a mutable undirected simple graph over dense integer node ids.

Node ids are assigned once at load time and never change; only edges are
removed while a graph is tracked. Original dataset labels live in graph_io.
"""

import logging
from collections import deque
from dataclasses import dataclass, field
from typing import AbstractSet, Dict, Iterable, Iterator, List, Optional, Set, Tuple

from errors import ComponentIndexError, EdgeNotFoundError, GraphError

logger = logging.getLogger(__name__)

NodeId = int
Edge = Tuple[NodeId, NodeId]

NO_NODES: AbstractSet[NodeId] = frozenset()


class UndirectedGraph:
    """
    Undirected graph without self-loops or parallel edges.

    The node set [0, node_count) is fixed for the lifetime of the instance.
    Adjacency is a list of neighbor sets indexed by node id, so symmetry
    (j in adj(i) iff i in adj(j)) is kept by every mutator.
    """

    __slots__ = ("node_count", "edge_count", "_adj")

    def __init__(self, node_count: int):
        if node_count < 0:
            raise GraphError(f"Node count must be non-negative, got {node_count}")
        self.node_count = node_count
        self.edge_count = 0
        self._adj: List[Set[NodeId]] = [set() for _ in range(node_count)]

    def _check_node(self, v: NodeId) -> None:
        if not 0 <= v < self.node_count:
            raise GraphError(f"Node id {v} is out of range [0, {self.node_count})")

    def add_edge(self, a: NodeId, b: NodeId) -> bool:
        """
        Add edge (a, b). Returns False when the edge was already present.

        Raises:
            GraphError: if an endpoint is out of range or a == b.
        """
        self._check_node(a)
        self._check_node(b)
        if a == b:
            raise GraphError(f"Self-loop on node {a} is not allowed")
        if b in self._adj[a]:
            return False
        self._adj[a].add(b)
        self._adj[b].add(a)
        self.edge_count += 1
        return True

    def remove_edge(self, a: NodeId, b: NodeId) -> None:
        """
        Remove edge (a, b) from both adjacency sets.

        Raises:
            EdgeNotFoundError: if the edge is absent.
        """
        self._check_node(a)
        self._check_node(b)
        if b not in self._adj[a]:
            raise EdgeNotFoundError(a, b)
        self._adj[a].discard(b)
        self._adj[b].discard(a)
        self.edge_count -= 1

    def has_edge(self, a: NodeId, b: NodeId) -> bool:
        return 0 <= a < self.node_count and b in self._adj[a]

    def neighbors(self, v: NodeId) -> AbstractSet[NodeId]:
        return self._adj[v]

    def degree(self, v: NodeId) -> int:
        return len(self._adj[v])

    def nodes(self) -> range:
        return range(self.node_count)

    def edges(self) -> Iterator[Edge]:
        """Yield each edge once as (low, high), in ascending order."""
        for a in range(self.node_count):
            for b in sorted(self._adj[a]):
                if a < b:
                    yield a, b

    def copy(self) -> "UndirectedGraph":
        clone = UndirectedGraph(self.node_count)
        clone._adj = [set(neigh) for neigh in self._adj]
        clone.edge_count = self.edge_count
        return clone

    def __repr__(self) -> str:
        return f"UndirectedGraph(n={self.node_count}, m={self.edge_count})"


@dataclass
class ComponentIndex:
    """
    Node -> component labeling with component sizes.

    Labels partition V and sizes sum to n. Labels are not dense after a
    split; a fresh label is taken from next_label.
    """

    label: List[int]
    sizes: Dict[int, int]
    next_label: int = field(default=0)

    @property
    def component_count(self) -> int:
        return len(self.sizes)

    def size_of(self, v: NodeId) -> int:
        return self.sizes[self.label[v]]

    def same_component(self, a: NodeId, b: NodeId) -> bool:
        return self.label[a] == self.label[b]

    def members(self, component: int) -> List[NodeId]:
        return [v for v, lab in enumerate(self.label) if lab == component]

    def split(self, moved: Iterable[NodeId]) -> int:
        """
        Move `moved` out of their shared component into a fresh one.

        Args:
            moved: Nodes that now form their own component. All of them must
                   currently carry the same label.

        Returns:
            int: The new component label.
        """
        moved = list(moved)
        if not moved:
            raise ComponentIndexError("Cannot split off an empty node set")
        old = self.label[moved[0]]
        new = self.next_label
        self.next_label += 1
        for v in moved:
            if self.label[v] != old:
                raise ComponentIndexError(
                    f"Node {v} has label {self.label[v]}, expected {old} for the split"
                )
            self.label[v] = new
        self.sizes[old] -= len(moved)
        if self.sizes[old] <= 0:
            raise ComponentIndexError(f"Split left component {old} empty")
        self.sizes[new] = len(moved)
        return new

    def copy(self) -> "ComponentIndex":
        return ComponentIndex(list(self.label), dict(self.sizes), self.next_label)


def build(node_count: int, edge_list: Iterable[Edge]) -> UndirectedGraph:
    """
    Build a graph from an edge list, collapsing duplicate edges.

    Args:
        node_count: Number of nodes; ids are [0, node_count).
        edge_list: Pairs of endpoints, in either orientation.

    Returns:
        UndirectedGraph: The graph holding exactly the distinct edges.

    Raises:
        GraphError: on an out-of-range endpoint or a self-loop.
    """
    graph = UndirectedGraph(node_count)
    duplicates = 0
    for a, b in edge_list:
        if not graph.add_edge(a, b):
            duplicates += 1
    if duplicates:
        logger.info(f"Collapsed {duplicates} duplicate edges while building graph")
    return graph


def delete_edge(g: UndirectedGraph, a: NodeId, b: NodeId) -> None:
    """Delete edge (a, b); a missing edge means the update stream is malformed."""
    g.remove_edge(a, b)


def reachable_from(g: UndirectedGraph, s: NodeId, removed: AbstractSet[NodeId] = NO_NODES) -> Set[NodeId]:
    """
    Return every node connected to s (s included) by breadth-first search.

    Args:
        g: Graph to traverse.
        s: Start node.
        removed: Nodes treated as deleted from the graph. s itself must not
                 be in this set.
    """
    if not 0 <= s < g.node_count:
        raise GraphError(f"Node id {s} is out of range [0, {g.node_count})")
    seen = {s}
    queue = deque([s])
    while queue:
        v = queue.popleft()
        for w in g.neighbors(v):
            if w not in seen and w not in removed:
                seen.add(w)
                queue.append(w)
    return seen


def components(g: UndirectedGraph, removed: AbstractSet[NodeId] = NO_NODES) -> ComponentIndex:
    """
    Label the connected components of g.

    Removed nodes each get a singleton label so the labeling still
    partitions V.
    """
    label = [-1] * g.node_count
    sizes: Dict[int, int] = {}
    next_label = 0
    for s in g.nodes():
        if label[s] != -1:
            continue
        if s in removed:
            members = {s}
        else:
            members = reachable_from(g, s, removed)
        for v in members:
            label[v] = next_label
        sizes[next_label] = len(members)
        next_label += 1
    return ComponentIndex(label, sizes, next_label)


def is_bridge_after_delete(g: UndirectedGraph, a: NodeId, b: NodeId) -> bool:
    """
    Tell whether the just-deleted edge (a, b) was a bridge.

    Must be called after delete_edge(g, a, b): the edge was a bridge exactly
    when b is no longer reachable from a.
    """
    return b not in reachable_from(g, a)


def check_consistent(g: UndirectedGraph, comp: ComponentIndex, v: NodeId,
                     reached: Optional[AbstractSet[NodeId]] = None) -> Set[NodeId]:
    """
    Verify that comp's class of v matches the nodes reachable from v.

    Returns:
        Set[NodeId]: The reachable set, so callers can reuse the traversal.

    Raises:
        ComponentIndexError: if the labeling is stale.
    """
    if reached is None:
        reached = reachable_from(g, v)
    lab = comp.label[v]
    if comp.sizes.get(lab) != len(reached) or any(comp.label[w] != lab for w in reached):
        raise ComponentIndexError(
            f"Component index is stale for node {v}: label {lab} has size "
            f"{comp.sizes.get(lab)} but {len(reached)} nodes are reachable"
        )
    return set(reached)
