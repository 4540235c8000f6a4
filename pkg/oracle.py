"""
Slow reference computations for tests and quality reports.

Nothing here is on the tracking hot path.
"""

from itertools import combinations
from typing import FrozenSet, List, Tuple

from connectivity import Score, node_score, residual_connectivity
from errors import OracleGuardError
from graph_core import NodeId, UndirectedGraph
from static_spanner import SpannerSet, top_k_greedy

BRUTE_FORCE_MAX_NODES = 16
BRUTE_FORCE_MAX_K = 3


def score_oracle(g: UndirectedGraph) -> List[Score]:
    """Score of every node by literal whole-graph recomputation."""
    return [node_score(g, v) for v in g.nodes()]


def static_recompute(g: UndirectedGraph, k: int) -> SpannerSet:
    """Recompute spanners from scratch on the current graph."""
    return top_k_greedy(g, k).spanners


def brute_force_topk(g: UndirectedGraph, k: int) -> Tuple[FrozenSet[NodeId], Score]:
    """
    Exhaustively find the k-subset whose removal minimizes P.

    Subsets are tried in lexicographic order and only a strictly better
    residual replaces the incumbent, so ties go to the smallest id set.

    Raises:
        OracleGuardError: if n > 16, k > 3 or k is otherwise out of range.
    """
    n = g.node_count
    if n > BRUTE_FORCE_MAX_NODES or not 1 <= k <= min(BRUTE_FORCE_MAX_K, n):
        raise OracleGuardError(
            f"Brute force needs n <= {BRUTE_FORCE_MAX_NODES} and 1 <= k <= "
            f"{BRUTE_FORCE_MAX_K}, got n={n}, k={k}"
        )
    best_set: Tuple[NodeId, ...] = ()
    best_score = None
    for subset in combinations(range(n), k):
        residual = residual_connectivity(g, subset)
        if best_score is None or residual < best_score:
            best_set, best_score = subset, residual
    return frozenset(best_set), best_score
