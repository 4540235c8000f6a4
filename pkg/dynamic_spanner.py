#!/usr/bin/env python3
"""
Structural hole spanner tracking under single edge deletions.

After an edge (a, b) is deleted only nodes that were connected to a or b
can change score. Those nodes are rescored with one articulation DFS per
surviving component, the max-heap Q and the Top-k min-heap are updated
where a score moved, and a greedy exchange pass of at most k steps
repairs Top-k.

Q keys are always scores in the full current graph. During an exchange
pass, nodes placed into Top-k are masked out of a working view; the
fragments they leave are rescored into a per-pass overlay that shadows
Q, so Q itself is never rewritten by the pass.
"""

import logging
from dataclasses import dataclass, field
from typing import AbstractSet, Dict, List, Optional, Set, Tuple

from connectivity import Score, articulation_scores, rescore_fragments
from errors import GraphError
from graph_core import (
    ComponentIndex,
    NodeId,
    UndirectedGraph,
    components,
    delete_edge,
    reachable_from,
)
from indexed_heap import IndexedHeap
from static_spanner import SpannerSet, best_first, is_better, top_k_greedy, worst_first

logger = logging.getLogger(__name__)

NON_BRIDGE = "non-bridge"
BRIDGE = "bridge"


@dataclass(frozen=True)
class UpdateEvent:
    """Deletion of edge (a, b)."""

    a: NodeId
    b: NodeId
    kind: str = "delete"

    def __post_init__(self):
        if self.a == self.b:
            raise GraphError(f"Update endpoints must differ, got ({self.a}, {self.b})")


@dataclass
class AffectedSet:
    """
    Nodes whose score can change under a deletion.

    For a non-bridge edge side_b is empty and side_a is the whole (intact)
    component. For a bridge the two sides are the two new components.
    """

    kind: str
    side_a: Set[NodeId]
    side_b: Set[NodeId] = field(default_factory=set)

    @property
    def is_bridge(self) -> bool:
        return self.kind == BRIDGE

    @property
    def nodes(self) -> Set[NodeId]:
        return self.side_a | self.side_b

    def __len__(self) -> int:
        return len(self.side_a) + len(self.side_b)


@dataclass
class SpannerState:
    """
    Live tracking state.

    Attributes:
        graph: Current graph with every node present.
        k: Spanner budget.
        queue: Max-heap over all nodes keyed by full-graph score.
        topk: Min-heap over the spanners keyed by their recorded score.
        scores: Full-graph score of every node.
        comp: Component labeling of graph.
        order: Spanner slots in selection order; a newcomer takes the
               slot of the spanner it evicts.
    """

    graph: UndirectedGraph
    k: int
    queue: IndexedHeap
    topk: IndexedHeap
    scores: List[Score]
    comp: ComponentIndex
    order: List[NodeId]

    def spanner_set(self) -> SpannerSet:
        """Current spanners in slot order, with their recorded scores."""
        spanners = SpannerSet(self.k)
        for v in self.order:
            spanners.append(v, self.topk_score(v))
        return spanners

    def topk_score(self, v: NodeId) -> Score:
        return self.topk.priority(v)[0]

    def clone(self) -> "SpannerState":
        return SpannerState(
            self.graph.copy(),
            self.k,
            self.queue.clone(),
            self.topk.clone(),
            list(self.scores),
            self.comp.copy(),
            list(self.order),
        )


def init(g: UndirectedGraph, k: int) -> SpannerState:
    """
    Seed a tracking state from the static greedy run.

    Q is keyed by scores in the full graph; Top-k by the greedy selection
    scores. The state owns a copy of g.
    """
    result = top_k_greedy(g, k)
    queue = IndexedHeap()
    for v, score in enumerate(result.initial_scores):
        queue.push(v, best_first(score, v))
    topk = IndexedHeap()
    for v, score in result.spanners:
        topk.push(v, worst_first(score, v))
    graph = g.copy()
    logger.info(f"Tracking initialised: n={graph.node_count}, m={graph.edge_count}, "
                f"k={k}, spanners={result.spanners.nodes()}")
    return SpannerState(graph, k, queue, topk, list(result.initial_scores),
                        components(graph), result.spanners.nodes())


def find_affected(state: SpannerState, a: NodeId, b: NodeId) -> AffectedSet:
    """
    Collect the nodes affected by the deletion of (a, b).

    Must be called after the edge is gone from state.graph. The reachability
    search from a doubles as the bridge test.
    """
    side_a = reachable_from(state.graph, a)
    if b in side_a:
        return AffectedSet(NON_BRIDGE, side_a)
    return AffectedSet(BRIDGE, side_a, reachable_from(state.graph, b))


def _refresh_scores(state: SpannerState, scored: Dict[NodeId, Score]) -> int:
    """Write new full-graph scores; Q is touched only where a score moved."""
    changed = 0
    for v, score in scored.items():
        if state.scores[v] != score:
            state.scores[v] = score
            state.queue.set_priority(v, best_first(score, v))
            changed += 1
    for v in state.order:
        if v in scored:
            state.topk.set_priority(v, worst_first(scored[v], v))
    return changed


def apply_deletion(state: SpannerState, event: UpdateEvent) -> AffectedSet:
    """
    Delete an edge and rescore exactly the affected nodes.

    The articulation DFS from a scores a's component and is also the
    bridge test: the edge was a bridge exactly when the DFS misses b.
    Case 1 (non-bridge): component labels are unchanged. Case 2 (bridge):
    b's side gets its own DFS and is split off under a fresh label.
    Spanners among the affected nodes get their Top-k key refreshed to
    the new score.

    Raises:
        EdgeNotFoundError: if the edge is not in the graph.
    """
    a, b = event.a, event.b
    delete_edge(state.graph, a, b)
    scored = articulation_scores(state.graph, a)
    if b in scored:
        affected = AffectedSet(NON_BRIDGE, set(scored))
    else:
        scored_b = articulation_scores(state.graph, b)
        affected = AffectedSet(BRIDGE, set(scored), set(scored_b))
        state.comp.split(affected.side_b)
        scored.update(scored_b)

    changed = _refresh_scores(state, scored)
    logger.debug(f"Deleted ({a}, {b}): {affected.kind}, {len(affected)} affected nodes, "
                 f"{changed} scores changed")
    return affected


def _best_candidate(queue: IndexedHeap, working: Dict[NodeId, Score],
                    placed: Set[NodeId]) -> Optional[Tuple[NodeId, Score]]:
    """
    Best open node in the working view.

    Nodes in `working` carry their working-view score there; every other
    open node still has its full-graph score as its Q key.
    """
    best = None
    if working:
        v = min(working, key=lambda x: best_first(working[x], x))
        best = best_first(working[v], v)
    for key, v in queue.ordered():
        if best is not None and key >= best:
            break
        if v not in working and v not in placed:
            best = key
            break
    if best is None:
        return None
    return best[1], -best[0]


def exchange_topk(state: SpannerState, k: Optional[int] = None) -> SpannerSet:
    """
    Repair Top-k with at most k greedy exchange steps.

    Each step takes w, the best open node in the working view, and stops as
    soon as w is not better than the worst spanner still open in this pass.
    Otherwise w is placed: confirmed if already a spanner, or swapped in
    for the worst spanner, which stays a candidate. A placed node is masked
    out of the working view and locked for the rest of the pass; the
    fragments it leaves are rescored before the next step needs them.

    Args:
        state: Tracking state with scores consistent with state.graph.
        k: Step bound; defaults to the state's budget.

    Returns:
        SpannerSet: The repaired spanners.
    """
    steps = state.k if k is None else k
    queue, topk = state.queue, state.topk
    placed: Set[NodeId] = set()
    working: Dict[NodeId, Score] = {}
    locked = []
    pending: Optional[AbstractSet[NodeId]] = None

    for _ in range(steps):
        if not topk:
            break
        if pending is not None:
            working.update(rescore_fragments(state.graph, pending, placed))
            pending = None
        candidate = _best_candidate(queue, working, placed)
        if candidate is None:
            break
        w, w_score = candidate
        worst = topk.top()
        worst_score = topk.top_priority()[0]
        if not is_better(w_score, w, worst_score, worst):
            logger.debug(f"Exchange stops: node {w} ({w_score}) does not beat "
                         f"spanner {worst} ({worst_score})")
            break
        if w in topk:
            topk.remove(w)
            logger.debug(f"Exchange confirms spanner {w} with score {w_score}")
        else:
            topk.remove(worst)
            state.order[state.order.index(worst)] = w
            logger.debug(f"Exchange swaps in {w} ({w_score}) for {worst} ({worst_score})")
        locked.append((w, w_score))
        placed.add(w)
        working.pop(w, None)
        pending = state.graph.neighbors(w)

    for v, score in locked:
        topk.push(v, worst_first(score, v))
    return state.spanner_set()


def handle_update(state: SpannerState, event: UpdateEvent, k: Optional[int] = None) -> SpannerSet:
    """Apply one deletion and repair Top-k; the state is ready for the next event."""
    apply_deletion(state, event)
    return exchange_topk(state, k)
