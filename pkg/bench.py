#!/usr/bin/env python3
"""
Dynamic-vs-static benchmark over a random edge deletion stream.

Starting from the full graph, edges are removed one at a time, chosen
uniformly from the edges still present with a seeded generator. Each
deletion is timed twice: the tracked update on the persistent state, and
a from-scratch greedy run on the same post-deletion graph. Speedup is
static time over dynamic time, summarised by geometric mean, min and max.
"""

import csv
import logging
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, List, Optional, Tuple, TypeVar, Union

import numpy as np
from tqdm import tqdm

from connectivity import Score, residual_connectivity
from dynamic_spanner import UpdateEvent, handle_update, init
from errors import BenchConfigError
from graph_io import LoadedGraph, load_graph, synthetic_graph
from oracle import static_recompute

logger = logging.getLogger(__name__)

CSV_HEADER = ["trial", "edge_u", "edge_v", "static_ms", "dynamic_ms", "speedup",
              "static_objective", "dynamic_objective"]

T = TypeVar("T")
R = TypeVar("R")


@dataclass
class BenchConfig:
    """
    One benchmark run.

    Attributes:
        graph_path: Dataset file; ignored when `synthetic` is set.
        k: Spanner budget.
        deletions: Number of edges to delete, at most m.
        seed: Seed for edge selection (and for synthetic graphs).
        output_path: CSV file for per-trial rows.
        fmt: Dataset format, inferred from the suffix when None.
        synthetic: (n, m) of a random stand-in graph instead of a file.
        min_timing_ms: Each timed call is repeated until this much time
                       has accumulated, then averaged.
        progress: Show a progress bar on stderr.
    """

    graph_path: Optional[str] = None
    k: int = 5
    deletions: int = 50
    seed: int = 42
    output_path: str = "bench.csv"
    fmt: Optional[str] = None
    synthetic: Optional[Tuple[int, int]] = None
    min_timing_ms: float = 10.0
    progress: bool = True


@dataclass
class TrialResult:
    """Timings and objectives for one deletion."""

    trial: int
    edge_u: str
    edge_v: str
    static_ms: float
    dynamic_ms: float
    speedup: float
    static_objective: Score
    dynamic_objective: Score

    @property
    def quality_ratio(self) -> float:
        """dynamic / static residual connectivity; above 1.0 the tracker did worse."""
        if self.static_objective == 0:
            return 1.0 if self.dynamic_objective == 0 else float("inf")
        return self.dynamic_objective / self.static_objective


@dataclass
class BenchSummary:
    gmean: float
    min: float
    max: float
    max_quality_ratio: float
    quality_regressions: int
    trials: int


def load_dataset(config: BenchConfig) -> LoadedGraph:
    if config.synthetic is not None:
        n, m = config.synthetic
        return synthetic_graph(n, m, config.seed)
    if not config.graph_path:
        raise BenchConfigError("A graph file or a synthetic size is required")
    return load_graph(config.graph_path, config.fmt)


def validate(config: BenchConfig, loaded: LoadedGraph) -> None:
    """
    Check the config against the loaded graph.

    Raises:
        BenchConfigError: if k or the deletion count is out of range.
    """
    graph = loaded.graph
    if not 1 <= config.k <= graph.node_count:
        raise BenchConfigError(f"k must be between 1 and {graph.node_count}, got {config.k}")
    if config.deletions < 0:
        raise BenchConfigError(f"Deletion count must be non-negative, got {config.deletions}")
    if config.deletions > graph.edge_count:
        raise BenchConfigError(
            f"Cannot delete {config.deletions} edges from a graph with {graph.edge_count}"
        )
    if config.min_timing_ms < 0:
        raise BenchConfigError(f"min_timing_ms must be non-negative, got {config.min_timing_ms}")


def _timed(prepare: Callable[[], T], run: Callable[[T], R], min_total: float) -> Tuple[float, T, R]:
    """
    Time `run` on fresh `prepare()` inputs until min_total seconds accumulate.

    Preparation is not timed. Returns the mean duration and the input and
    output of the last repetition.
    """
    total = 0.0
    repetitions = 0
    while True:
        arg = prepare()
        start = time.perf_counter()
        result = run(arg)
        total += time.perf_counter() - start
        repetitions += 1
        if total >= min_total:
            break
    return max(total / repetitions, 1e-9), arg, result


def run_deletion_stream(config: BenchConfig, loaded: Optional[LoadedGraph] = None) -> List[TrialResult]:
    """
    Replay a seeded random deletion stream, timing both methods per deletion.

    Args:
        config: Benchmark settings.
        loaded: Pre-loaded dataset; loaded from config when None.

    Returns:
        List[TrialResult]: One entry per deletion.

    Raises:
        BenchConfigError: on invalid settings.
        GraphFormatError: if the dataset cannot be loaded.
    """
    if loaded is None:
        loaded = load_dataset(config)
    validate(config, loaded)
    if config.deletions == 0:
        return []

    state = init(loaded.graph, config.k)
    rng = np.random.default_rng(config.seed)
    edges = sorted(state.graph.edges())
    min_total = config.min_timing_ms / 1000.0
    results = []

    for trial in tqdm(range(1, config.deletions + 1), desc="Deletions", unit="edge",
                      disable=not config.progress, leave=False):
        index = int(rng.integers(len(edges)))
        a, b = edges[index]
        edges[index] = edges[-1]
        edges.pop()
        event = UpdateEvent(a, b)

        post_graph = state.graph.copy()
        post_graph.remove_edge(a, b)
        static_time, _, static_set = _timed(
            lambda: post_graph, lambda g: static_recompute(g, config.k), min_total)

        previous = state
        dynamic_time, state, dynamic_set = _timed(
            previous.clone, lambda s: handle_update(s, event, config.k), min_total)

        result = TrialResult(
            trial=trial,
            edge_u=loaded.label_of(a),
            edge_v=loaded.label_of(b),
            static_ms=static_time * 1000.0,
            dynamic_ms=dynamic_time * 1000.0,
            speedup=static_time / dynamic_time,
            static_objective=residual_connectivity(post_graph, static_set.nodes()),
            dynamic_objective=residual_connectivity(state.graph, dynamic_set.nodes()),
        )
        logger.info(f"Trial {trial}: deleted ({result.edge_u}, {result.edge_v}), "
                    f"static {result.static_ms:.3f} ms, dynamic {result.dynamic_ms:.3f} ms, "
                    f"speedup {result.speedup:.2f}")
        results.append(result)
    return results


def aggregate(results: List[TrialResult]) -> BenchSummary:
    """
    Geometric mean, minimum and maximum speedup, plus the quality ledger.

    Raises:
        ValueError: on an empty result list.
    """
    if not results:
        raise ValueError("Cannot aggregate an empty result list")
    speedups = np.array([r.speedup for r in results], dtype=float)
    ratios = [r.quality_ratio for r in results]
    return BenchSummary(
        gmean=float(np.exp(np.mean(np.log(speedups)))),
        min=float(speedups.min()),
        max=float(speedups.max()),
        max_quality_ratio=max(ratios),
        quality_regressions=sum(1 for ratio in ratios if ratio > 1.0),
        trials=len(results),
    )


def summary_path(path: Union[str, Path]) -> Path:
    """Sibling summary file: results.csv -> results.summary.csv."""
    return Path(path).with_suffix(".summary.csv")


def emit_csv(results: List[TrialResult], path: Union[str, Path]) -> None:
    """
    Write per-trial rows to `path` and `metric,value` rows to its summary sibling.

    An empty result list gives a header-only results file and a summary
    with just the trial count.
    """
    path = Path(path)
    with open(path, "w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f)
        writer.writerow(CSV_HEADER)
        for r in results:
            writer.writerow([r.trial, r.edge_u, r.edge_v, f"{r.static_ms:.6f}",
                             f"{r.dynamic_ms:.6f}", f"{r.speedup:.6f}",
                             r.static_objective, r.dynamic_objective])

    with open(summary_path(path), "w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f)
        writer.writerow(["metric", "value"])
        if results:
            summary = aggregate(results)
            writer.writerow(["gmean", round(summary.gmean, 6)])
            writer.writerow(["min", round(summary.min, 6)])
            writer.writerow(["max", round(summary.max, 6)])
            writer.writerow(["max_quality_ratio", round(summary.max_quality_ratio, 6)])
            writer.writerow(["quality_regressions", summary.quality_regressions])
        writer.writerow(["trials", len(results)])
    logger.info(f"Wrote {len(results)} trials to '{path}'")
