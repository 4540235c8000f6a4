#!/usr/bin/env python3
"""
Static structural hole spanner identification.

Greedy baseline: k times, take the node with the largest connectivity
score in the residual graph and remove it. Ties go to the lowest node id.
"""

import logging
from dataclasses import dataclass, field
from typing import Iterator, List, Tuple

from connectivity import Score, all_scores, rescore_fragments
from errors import SelectionError
from graph_core import NodeId, UndirectedGraph
from indexed_heap import IndexedHeap

logger = logging.getLogger(__name__)


def best_first(score: Score, v: NodeId) -> Tuple[int, int]:
    """Heap priority that pops the best node: highest score, then lowest id."""
    return -score, v


def worst_first(score: Score, v: NodeId) -> Tuple[int, int]:
    """Heap priority that pops the worst node under the same order."""
    return score, -v


def is_better(score_a: Score, a: NodeId, score_b: Score, b: NodeId) -> bool:
    """True when (score_a, a) strictly precedes (score_b, b) in selection order."""
    return best_first(score_a, a) < best_first(score_b, b)


@dataclass
class SpannerSet:
    """
    Spanners in selection order, each with the score it had when selected.
    """

    capacity: int
    entries: List[Tuple[NodeId, Score]] = field(default_factory=list)

    def append(self, v: NodeId, score: Score) -> None:
        if len(self.entries) >= self.capacity:
            raise SelectionError(f"Spanner set is full (k={self.capacity})")
        if v in self:
            raise SelectionError(f"Node {v} is already a spanner")
        self.entries.append((v, score))

    def nodes(self) -> List[NodeId]:
        return [v for v, _ in self.entries]

    def __contains__(self, v: NodeId) -> bool:
        return any(u == v for u, _ in self.entries)

    def __iter__(self) -> Iterator[Tuple[NodeId, Score]]:
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)


@dataclass
class GreedyResult:
    """
    Output of top_k_greedy.

    Attributes:
        spanners: Selected nodes with their selection scores.
        residual_scores: Scores in the graph left after removing every
                         spanner; spanners themselves score 0.
        initial_scores: Scores in the input graph, before any removal.
    """

    spanners: SpannerSet
    residual_scores: List[Score]
    initial_scores: List[Score]


def top_k_greedy(g: UndirectedGraph, k: int) -> GreedyResult:
    """
    Select k spanners by repeated max-score removal.

    Only the component that lost a node is rescored between rounds; the
    input graph is never mutated (removals are a mask over it).

    Args:
        g: Input graph.
        k: Number of spanners, 1 <= k <= n.

    Returns:
        GreedyResult: spanner set plus score tables for seeding dynamic tracking.

    Raises:
        SelectionError: if k is out of range.
    """
    if not 1 <= k <= g.node_count:
        raise SelectionError(f"k must be between 1 and {g.node_count}, got {k}")

    initial = all_scores(g)
    scores = list(initial)
    queue = IndexedHeap()
    for v, score in enumerate(scores):
        queue.push(v, best_first(score, v))

    removed = set()
    spanners = SpannerSet(k)
    for _ in range(k):
        v = queue.pop()
        spanners.append(v, scores[v])
        logger.debug(f"Greedy round {len(spanners)}: selected node {v} with score {scores[v]}")
        removed.add(v)
        scores[v] = 0
        for w, score in rescore_fragments(g, g.neighbors(v), removed).items():
            scores[w] = score
            queue.set_priority(w, best_first(score, w))

    return GreedyResult(spanners, scores, initial)
