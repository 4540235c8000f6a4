#!/usr/bin/env python3
"""
Tests for spanner tracking under edge deletions.
"""

import random
import unittest
from unittest.mock import patch

from connectivity import residual_connectivity
import dynamic_spanner
from dynamic_spanner import (
    BRIDGE,
    NON_BRIDGE,
    UpdateEvent,
    apply_deletion,
    exchange_topk,
    find_affected,
    handle_update,
    init,
)
from errors import EdgeNotFoundError, GraphError
from graph_core import UndirectedGraph, build, components, delete_edge, reachable_from
from graph_io import synthetic_graph
from indexed_heap import IndexedHeap
from oracle import score_oracle, static_recompute
from static_spanner import top_k_greedy
from tests.sample_graphs import (
    L,
    SLOW,
    barbell,
    cycle_graph,
    figure_graph,
    karate,
    path_graph,
    random_graph,
    star,
)


def queue_score(state, v):
    return -state.queue.priority(v)[0]


def deletion_stream(g, count, rng):
    """Pick up to `count` distinct present edges uniformly at random."""
    edges = sorted(g.edges())
    rng.shuffle(edges)
    return [UpdateEvent(a, b) for a, b in edges[:count]]


class TestInit(unittest.TestCase):
    """Test seeding the tracking state from the greedy run."""

    def test_path_of_three(self):
        state = init(path_graph(3), 1)
        self.assertEqual(state.spanner_set().entries, [(1, 3)])
        self.assertEqual([queue_score(state, v) for v in range(3)], [2, 3, 2])

    def test_edgeless_graph(self):
        state = init(UndirectedGraph(3), 1)
        self.assertEqual(state.spanner_set().entries, [(0, 0)])

    def test_karate_shape(self):
        g = karate()
        state = init(g, 5)
        self.assertEqual(len(state.topk), 5)
        self.assertEqual(len(state.queue), 34)
        self.assertEqual(state.spanner_set().nodes(), top_k_greedy(g, 5).spanners.nodes())
        self.assertEqual(state.comp.component_count, 1)

    def test_state_owns_its_graph(self):
        g = path_graph(3)
        state = init(g, 1)
        handle_update(state, UpdateEvent(0, 1))
        self.assertTrue(g.has_edge(0, 1))


class TestFindAffected(unittest.TestCase):
    """Test collection of affected nodes."""

    def test_figure_bridge(self):
        state = init(figure_graph(), 1)
        delete_edge(state.graph, L["g"], L["h"])
        affected = find_affected(state, L["g"], L["h"])
        self.assertEqual(affected.kind, BRIDGE)
        self.assertEqual(affected.side_a, {L[x] for x in "fgkl"})
        self.assertEqual(affected.side_b, {L[x] for x in "hijm"})

    def test_triangle_non_bridge(self):
        state = init(cycle_graph(3), 1)
        delete_edge(state.graph, 0, 1)
        affected = find_affected(state, 0, 1)
        self.assertEqual(affected.kind, NON_BRIDGE)
        self.assertEqual(affected.nodes, {0, 1, 2})

    def test_disjoint_edges(self):
        state = init(build(4, [(0, 1), (2, 3)]), 1)
        delete_edge(state.graph, 2, 3)
        affected = find_affected(state, 2, 3)
        self.assertTrue(affected.is_bridge)
        self.assertEqual((affected.side_a, affected.side_b), ({2}, {3}))


class TestApplyDeletion(unittest.TestCase):
    """Test graph, component and score maintenance for one deletion."""

    def test_cycle_becomes_path(self):
        """C4 scores 3 everywhere; the path left behind scores 3, 5, 5, 3."""
        state = init(cycle_graph(4), 1)
        self.assertEqual(state.scores, [3, 3, 3, 3])
        affected = apply_deletion(state, UpdateEvent(3, 0))
        self.assertEqual(affected.kind, NON_BRIDGE)
        self.assertEqual(affected.nodes, {0, 1, 2, 3})
        self.assertEqual(state.scores, [3, 5, 5, 3])
        self.assertEqual(state.comp.component_count, 1)

    def test_path_split(self):
        state = init(path_graph(3), 1)
        affected = apply_deletion(state, UpdateEvent(1, 2))
        self.assertEqual(affected.kind, BRIDGE)
        self.assertEqual(state.scores, [1, 1, 0])
        self.assertEqual(state.comp.component_count, 2)
        self.assertEqual(state.graph.edge_count, 1)

    def test_figure_bridge_rescoring(self):
        state = init(figure_graph(), 2)
        untouched = {v: state.scores[v] for v in (L[x] for x in "abcde")}
        apply_deletion(state, UpdateEvent(L["g"], L["h"]))
        self.assertEqual(state.scores, score_oracle(state.graph))
        for v, score in untouched.items():
            self.assertEqual(state.scores[v], score)
        self.assertEqual(state.comp.component_count, 3)

    def test_spanner_keys_follow_affected_scores(self):
        """An affected spanner's Top-k key is refreshed to its new score."""
        state = init(path_graph(3), 1)
        apply_deletion(state, UpdateEvent(1, 2))
        self.assertEqual(state.topk_score(1), 1)

    def test_queue_updated_only_where_scores_move(self):
        """Cutting a K4 edge next to a tail moves no score, so Q is left alone."""
        g = build(5, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (3, 4)])
        state = init(g, 1)
        before = list(state.scores)
        with patch.object(IndexedHeap, "set_priority", autospec=True,
                          side_effect=IndexedHeap.set_priority) as set_priority:
            affected = apply_deletion(state, UpdateEvent(0, 1))
        self.assertEqual(affected.nodes, {0, 1, 2, 3, 4})
        self.assertEqual(state.scores, before)
        self.assertEqual(state.scores, score_oracle(state.graph))
        queue_calls = [c for c in set_priority.call_args_list if c.args[0] is state.queue]
        self.assertEqual(queue_calls, [])

    def test_bridge_found_without_separate_search(self):
        state = init(path_graph(4), 1)
        with patch.object(dynamic_spanner, "reachable_from") as search:
            affected = apply_deletion(state, UpdateEvent(1, 2))
        search.assert_not_called()
        self.assertEqual((affected.kind, affected.side_a, affected.side_b), (BRIDGE, {0, 1}, {2, 3}))
        self.assertEqual(state.comp.component_count, 2)

    def test_missing_edge(self):
        state = init(path_graph(3), 1)
        with self.assertRaises(EdgeNotFoundError):
            apply_deletion(state, UpdateEvent(0, 2))

    def test_event_endpoints_must_differ(self):
        with self.assertRaises(GraphError):
            UpdateEvent(1, 1)


class TestExchange(unittest.TestCase):
    """Test the greedy exchange pass."""

    def test_nothing_changed_keeps_spanners(self):
        for g in (karate(), barbell(), path_graph(7)):
            state = init(g, 3)
            before = state.spanner_set().entries
            self.assertEqual(exchange_topk(state).entries, before)
            self.assertEqual(state.scores, score_oracle(state.graph))

    def test_k1_returns_global_best(self):
        rng = random.Random(31)
        for i in range(60):
            g = random_graph(rng.randint(2, 40), rng.choice([0.05, 0.1, 0.2]), 500 + i)
            state = init(g, 1)
            for event in deletion_stream(g, 3, rng):
                apply_deletion(state, event)
                best = min(g.nodes(), key=lambda v: (-state.scores[v], v))
                self.assertEqual(exchange_topk(state).nodes(), [best])

    def test_barbell_internal_edge(self):
        """Deleting a K4 edge and exchanging matches recomputation."""
        state = init(barbell(), 2)
        self.assertEqual(state.spanner_set().nodes(), [5, 3])
        spanners = handle_update(state, UpdateEvent(0, 1), 2)
        static = static_recompute(state.graph, 2)
        self.assertEqual(residual_connectivity(state.graph, spanners.nodes()),
                         residual_connectivity(state.graph, static.nodes()))
        self.assertEqual(residual_connectivity(state.graph, spanners.nodes()), 13)

    def test_queue_untouched_by_pass(self):
        state = init(karate(), 5)
        apply_deletion(state, UpdateEvent(0, 1))
        before = list(state.queue.heap)
        exchange_topk(state)
        self.assertEqual(state.queue.heap, before)
        self.assertEqual(len(state.queue), 34)
        for v in state.graph.nodes():
            self.assertEqual(queue_score(state, v), state.scores[v])

    def test_last_step_skips_fragment_rescoring(self):
        state = init(karate(), 1)
        apply_deletion(state, UpdateEvent(0, 1))
        with patch.object(dynamic_spanner, "rescore_fragments",
                          wraps=dynamic_spanner.rescore_fragments) as rescore:
            exchange_topk(state)
        rescore.assert_not_called()

    def test_fragments_rescored_once_per_later_step(self):
        state = init(barbell(), 3)
        before = state.spanner_set().entries
        with patch.object(dynamic_spanner, "rescore_fragments",
                          wraps=dynamic_spanner.rescore_fragments) as rescore:
            spanners = exchange_topk(state)
        self.assertEqual(spanners.entries, before)
        self.assertEqual(rescore.call_count, 2)

    def test_swapped_in_node_takes_evicted_slot(self):
        """Cutting a path of 5 at (2,3) moves the spanner from 2 to 1."""
        state = init(path_graph(5), 1)
        spanners = handle_update(state, UpdateEvent(2, 3))
        self.assertEqual(spanners.entries, [(1, 3)])
        self.assertEqual(state.order, [1])
        self.assertEqual(state.queue.top(), 1)

    def test_star_pair_keeps_hub(self):
        # star on 0..4 and a smaller star on 5..8, joined by (4, 5)
        g = build(9, [(0, 1), (0, 2), (0, 3), (0, 4), (4, 5), (5, 6), (5, 7), (5, 8)])
        state = init(g, 1)
        self.assertEqual(state.spanner_set().entries, [(0, 26)])
        spanners = handle_update(state, UpdateEvent(4, 5))
        self.assertEqual(spanners.entries, [(0, 10)])
        self.assertEqual(spanners.nodes(), top_k_greedy(state.graph, 1).spanners.nodes())


class TestHandleUpdate(unittest.TestCase):
    """Test complete update handling."""

    def test_far_component_leaves_spanner(self):
        g = build(9, [(0, 1), (0, 2), (0, 3), (0, 4), (0, 5), (6, 7), (7, 8), (6, 8)])
        state = init(g, 1)
        self.assertEqual(state.spanner_set().nodes(), [0])
        spanners = handle_update(state, UpdateEvent(6, 7), 1)
        self.assertEqual(spanners.nodes(), [0])
        self.assertEqual(static_recompute(state.graph, 1).nodes(), [0])

    def test_path_of_five_keeps_center(self):
        state = init(path_graph(5), 1)
        self.assertEqual(handle_update(state, UpdateEvent(0, 1), 1).nodes(), [2])

    def test_stream_on_dolphin_sized_graph(self):
        """Every intermediate score table matches recomputation."""
        loaded = synthetic_graph(62, 159, seed=3)
        state = init(loaded.graph, 5)
        rng = random.Random(62)
        for event in deletion_stream(loaded.graph, 50, rng):
            spanners = handle_update(state, event, 5)
            self.assertEqual(state.scores, score_oracle(state.graph))
            self.assertEqual(len(set(spanners.nodes())), 5)

    def test_star_center_survives_leaf_loss(self):
        state = init(star(5), 1)
        self.assertEqual(handle_update(state, UpdateEvent(0, 5)).nodes(), [0])

    def test_edge_insertion_order_does_not_matter(self):
        """Neighbor iteration order never leaks into scores or spanners."""
        rng = random.Random(77)
        for i in range(10):
            g = random_graph(60, 0.08, 700 + i)
            edges = sorted(g.edges())
            shuffled = list(edges)
            rng.shuffle(shuffled)
            shuffled = [(b, a) if rng.random() < 0.5 else (a, b) for a, b in shuffled]
            first = init(build(g.node_count, edges), 4)
            second = init(build(g.node_count, shuffled), 4)
            for event in deletion_stream(g, 10, rng):
                self.assertEqual(handle_update(first, event).entries,
                                 handle_update(second, event).entries)
                self.assertEqual(first.scores, second.scores)


class TestTrackingProperties(unittest.TestCase):
    """Exactness properties over seeded random deletion streams."""

    def test_scores_and_affected_sets(self):
        """
        After every deletion: scores equal recomputation, the affected set is
        what was connected to an endpoint, nodes outside it keep their score,
        non-bridge deletions never lower a score and bridge deletions lower
        every affected score.
        """
        graphs = 200 if SLOW else 4
        rng = random.Random(41)
        for i in range(graphs):
            g = random_graph(100, 0.05, 9000 + i)
            state = init(g, 5)
            for event in deletion_stream(g, 30, rng):
                before = list(state.scores)
                expected = reachable_from(state.graph, event.a)
                affected = apply_deletion(state, event)
                exchange_topk(state)

                self.assertEqual(affected.nodes, expected)
                self.assertEqual(state.scores, score_oracle(state.graph))
                for v in state.graph.nodes():
                    if v not in affected.nodes:
                        self.assertEqual(state.scores[v], before[v])
                    elif affected.is_bridge:
                        self.assertLess(state.scores[v], before[v])
                    else:
                        self.assertGreaterEqual(state.scores[v], before[v])
                self.assertEqual(len(state.queue), state.graph.node_count)
                self.assertEqual(len(set(state.order)), len(state.order))
                self.assertEqual(set(state.order), set(state.topk.items()))
                check = components(state.graph)
                self.assertEqual(check.component_count, state.comp.component_count)

    def test_k1_matches_recomputation(self):
        """With k=1 the tracked spanner is exactly the static pick after one deletion."""
        graphs = 500 if SLOW else 150
        rng = random.Random(42)
        checked = 0
        for i in range(graphs):
            g = random_graph(rng.randint(2, 60), rng.choice([0.03, 0.08, 0.15, 0.3]), 20000 + i)
            if g.edge_count == 0:
                continue
            state = init(g, 1)
            event = deletion_stream(g, 1, rng)[0]
            spanners = handle_update(state, event, 1)
            self.assertEqual(spanners.nodes(), top_k_greedy(state.graph, 1).spanners.nodes())
            checked += 1
        self.assertGreater(checked, graphs // 2)

    def test_exchange_never_repeats_nodes(self):
        rng = random.Random(43)
        for i in range(20):
            g = random_graph(30, 0.1, 30000 + i)
            k = rng.randint(1, 6)
            state = init(g, k)
            for event in deletion_stream(g, 10, rng):
                spanners = handle_update(state, event, k)
                self.assertEqual(len(spanners), k)
                self.assertEqual(len(set(spanners.nodes())), k)

    def test_clone_is_independent(self):
        state = init(path_graph(5), 2)
        copy = state.clone()
        handle_update(copy, UpdateEvent(0, 1))
        self.assertTrue(state.graph.has_edge(0, 1))
        self.assertEqual(state.scores, [4, 7, 8, 7, 4])


if __name__ == "__main__":
    unittest.main()
