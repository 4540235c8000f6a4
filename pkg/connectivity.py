#!/usr/bin/env python3
"""
Pairwise connectivity and per-node connectivity scores.

P(G) counts unordered connected node pairs: the sum of s*(s-1)/2 over
component sizes s. The ordered-pair form counts every pair twice; all
selections are invariant to that factor. The score of node i is
c(i) = P(G) - P(G minus i) and only depends on i's own component.
"""

import logging
from typing import AbstractSet, Dict, Iterable, Iterator, List, Tuple

from errors import ComponentIndexError, SelectionError
from graph_core import (
    NO_NODES,
    ComponentIndex,
    NodeId,
    UndirectedGraph,
    check_consistent,
    reachable_from,
)

logger = logging.getLogger(__name__)

Score = int
ScoreTable = Dict[NodeId, Score]


def pairs(size: int) -> Score:
    """Number of unordered pairs among `size` nodes."""
    return size * (size - 1) // 2


def _component_sizes(g: UndirectedGraph, removed: AbstractSet[NodeId]) -> Iterator[int]:
    seen = set(removed)
    for s in g.nodes():
        if s in seen:
            continue
        members = reachable_from(g, s, removed)
        seen |= members
        yield len(members)


def total_pairwise_connectivity(g: UndirectedGraph) -> Score:
    """P(G): number of unordered node pairs joined by a path."""
    return sum(pairs(size) for size in _component_sizes(g, NO_NODES))


def residual_connectivity(g: UndirectedGraph, removed: Iterable[NodeId]) -> Score:
    """P of g with the `removed` nodes (and their edges) taken out."""
    return sum(pairs(size) for size in _component_sizes(g, frozenset(removed)))


def ordered_pair_connectivity(g: UndirectedGraph) -> Score:
    """P(G) counted over ordered pairs (i, j), i != j."""
    return 2 * total_pairwise_connectivity(g)


def node_score(g: UndirectedGraph, i: NodeId) -> Score:
    """
    c(i) = P(G) - P(G minus i), by two whole-graph labelings.

    The graph is not mutated; node i is masked out instead.
    """
    return total_pairwise_connectivity(g) - residual_connectivity(g, (i,))


def node_score_component(g: UndirectedGraph, comp: ComponentIndex, i: NodeId) -> Score:
    """
    Score node i by traversing only its own component.

    With s the size of C(i) and s_1..s_t the sizes of the fragments left
    when i is removed, the score is s(s-1)/2 - sum of s_j(s_j-1)/2.

    Args:
        g: Current graph.
        comp: Component labeling of g.
        i: Node to score.

    Raises:
        ComponentIndexError: if comp disagrees with g around i.
    """
    members = check_consistent(g, comp, i)
    without_i = frozenset((i,))
    covered = {i}
    fragment_pairs = 0
    for start in g.neighbors(i):
        if start in covered:
            continue
        fragment = reachable_from(g, start, without_i)
        covered |= fragment
        fragment_pairs += pairs(len(fragment))
    return pairs(len(members)) - fragment_pairs


def articulation_scores(g: UndirectedGraph, root: NodeId,
                        removed: AbstractSet[NodeId] = NO_NODES) -> ScoreTable:
    """
    Score every node in root's component with one Hopcroft-Tarjan DFS.

    Each DFS child whose low point does not climb above its parent is a
    fragment that the parent's removal cuts off; its subtree size is the
    fragment size. Whatever is left of the component besides those
    fragments (and the node itself) is one more fragment. Non-articulation
    nodes therefore score s - 1.

    Args:
        g: Graph to traverse.
        root: Any non-removed node of the component to score.
        removed: Nodes treated as deleted.

    Returns:
        ScoreTable: Score of every node reachable from root.
    """
    disc: Dict[NodeId, int] = {root: 0}
    low: Dict[NodeId, int] = {root: 0}
    subtree: Dict[NodeId, int] = {root: 1}
    cut_off: Dict[NodeId, List[int]] = {root: []}
    parent: Dict[NodeId, NodeId] = {root: -1}
    counter = 1
    stack: List[Tuple[NodeId, Iterator[NodeId]]] = [(root, iter(g.neighbors(root)))]

    while stack:
        v, pending = stack[-1]
        descended = False
        for w in pending:
            if w in removed:
                continue
            if w not in disc:
                disc[w] = low[w] = counter
                counter += 1
                subtree[w] = 1
                cut_off[w] = []
                parent[w] = v
                stack.append((w, iter(g.neighbors(w))))
                descended = True
                break
            if w != parent[v] and disc[w] < low[v]:
                low[v] = disc[w]
        if descended:
            continue
        stack.pop()
        if stack:
            p = stack[-1][0]
            subtree[p] += subtree[v]
            if low[v] < low[p]:
                low[p] = low[v]
            if low[v] >= disc[p]:
                cut_off[p].append(subtree[v])

    size = subtree[root]
    component_pairs = pairs(size)
    scores: ScoreTable = {}
    for v, fragments in cut_off.items():
        rest = size - 1 - sum(fragments)
        scores[v] = component_pairs - pairs(rest) - sum(pairs(f) for f in fragments)
    return scores


def batch_component_scores(g: UndirectedGraph, comp: ComponentIndex,
                           members: Iterable[NodeId]) -> ScoreTable:
    """
    Score a set of nodes that share one component, in a single DFS.

    Gives the same values as node_score_component for each member, in
    O(s + e) for the whole component instead of per member.

    Raises:
        SelectionError: if the members span more than one component.
        ComponentIndexError: if comp is stale for that component.
    """
    members = list(members)
    if not members:
        return {}
    lab = comp.label[members[0]]
    stray = [v for v in members if comp.label[v] != lab]
    if stray:
        raise SelectionError(
            f"Members span several components: {stray[0]} is not in component {lab}"
        )
    scores = articulation_scores(g, members[0])
    if len(scores) != comp.sizes[lab] or any(comp.label[v] != lab for v in scores):
        raise ComponentIndexError(
            f"Component {lab} has size {comp.sizes[lab]} in the index but "
            f"{len(scores)} nodes are reachable"
        )
    return {v: scores[v] for v in members}


def all_scores(g: UndirectedGraph, removed: AbstractSet[NodeId] = NO_NODES) -> List[Score]:
    """
    Score every node of g, one articulation DFS per component.

    Removed nodes get 0.
    """
    table = [0] * g.node_count
    done = set(removed)
    for v in g.nodes():
        if v in done:
            continue
        component = articulation_scores(g, v, removed)
        for w, score in component.items():
            table[w] = score
        done.update(component)
    return table


def rescore_fragments(g: UndirectedGraph, seeds: Iterable[NodeId],
                      removed: AbstractSet[NodeId]) -> ScoreTable:
    """
    Rescore the components (under `removed`) that contain any of `seeds`.

    Used after a node is taken out: its former neighbors seed the
    fragments it leaves behind.
    """
    scores: ScoreTable = {}
    for s in seeds:
        if s in removed or s in scores:
            continue
        scores.update(articulation_scores(g, s, removed))
    return scores
