#!/usr/bin/env python3
"""
sh-track - find and track structural hole spanners in an undirected graph.

A structural hole spanner is a node whose removal cuts many node pairs
apart. This tool picks the top-k spanners of a dataset greedily, keeps
them up to date while edges are deleted, and benchmarks that tracking
against recomputing from scratch.

License: MIT
"""

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional

from assets import color
from bench import BenchConfig, aggregate, emit_csv, run_deletion_stream, summary_path
from connectivity import residual_connectivity
from dynamic_spanner import handle_update, init
from errors import EdgeNotFoundError, ShTrackError, UpdateFormatError
from graph_io import FORMATS, LoadedGraph, load_graph, load_updates
from graph_core import UndirectedGraph
from static_spanner import SpannerSet, top_k_greedy

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 2

DEFAULT_CONFIG = Path(__file__).with_name("config.json")


def get_default_settings() -> Dict[str, Any]:
    """
    Provides the built-in run settings.

    Used as the fallback when no configuration file is found or the file
    is invalid, and as the base that a configuration file overrides.

    Returns:
        Dict[str, Any]: Setting name to value.
    """
    return {
        "k": 5,
        "deletions": 50,
        "seed": 42,
        "min_timing_ms": 10.0,
        "log_file": "sh_track.log",
        "log_level": "ERROR",
        "progress": True,
    }


def _is_int(value: Any) -> bool:
    return isinstance(value, int) and not isinstance(value, bool)


# Setting name -> (check, expectation shown in the warning)
SETTING_CHECKS = {
    "k": (lambda v: _is_int(v) and v >= 1, "a positive integer"),
    "deletions": (lambda v: _is_int(v) and v >= 0, "a non-negative integer"),
    "seed": (_is_int, "an integer"),
    "min_timing_ms": (lambda v: (_is_int(v) or isinstance(v, float)) and v >= 0, "a non-negative number"),
    "log_file": (lambda v: isinstance(v, str) and bool(v), "a file name"),
    "log_level": (lambda v: isinstance(v, str) and isinstance(logging.getLevelName(v.upper()), int),
                  "a logging level name"),
    "progress": (lambda v: isinstance(v, bool), "true or false"),
}


def load_settings(config_path: Optional[str] = None) -> Dict[str, Any]:
    """
    Load run settings from a JSON configuration file.

    Known keys in the file override the defaults; unknown keys are ignored
    and a value of the wrong type keeps its default with a warning.

    Args:
        config_path: Path to the configuration file (default: config.json
                     next to this script).

    Returns:
        Dict[str, Any]: The merged settings. Returns defaults on error.
    """
    config_path = config_path or str(DEFAULT_CONFIG)
    settings = get_default_settings()
    try:
        with open(config_path, "r", encoding="utf-8") as f:
            overrides = json.load(f)
        if not isinstance(overrides, dict):
            color.print_yellow(f"Warning: Config file '{config_path}' is not a JSON object. Using defaults.")
            return settings
        for key, value in overrides.items():
            if key not in settings:
                logger.warning(f"Ignoring unknown setting '{key}' in '{config_path}'")
                continue
            check, expected = SETTING_CHECKS[key]
            if check(value):
                settings[key] = value
            else:
                color.print_yellow(f"Warning: Setting '{key}' in '{config_path}' must be {expected}, "
                                   f"got {value!r}. Using default {settings[key]!r}.")
        return settings
    except FileNotFoundError:
        color.print_yellow(f"Warning: Config file '{config_path}' not found. Using default settings.")
        return settings
    except json.JSONDecodeError as e:
        color.print_red(f"Error: Invalid JSON in config file '{config_path}': {e}")
        return get_default_settings()
    except OSError as e:
        color.print_red(f"Error reading config file '{config_path}': {e}")
        return get_default_settings()


def configure_logging(settings: Dict[str, Any]) -> None:
    """Send log records to the configured file, replacing any earlier handlers."""
    level = getattr(logging, str(settings.get("log_level", "ERROR")).upper(), logging.ERROR)
    logging.basicConfig(
        filename=settings.get("log_file", "sh_track.log"),
        level=level,
        format="%(asctime)s [%(levelname)s] %(message)s",
        force=True,
    )


def positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be a positive integer, got {value}")
    return value


def non_negative_int(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"must be a non-negative integer, got {value}")
    return value


def spanner_rows(spanners: SpannerSet, loaded: LoadedGraph) -> List[Dict[str, Any]]:
    return [{"node": loaded.label_of(v), "score": score} for v, score in spanners]


def print_spanners(spanners: SpannerSet, loaded: LoadedGraph, graph: UndirectedGraph,
                   as_json: bool, extra: Optional[Dict[str, Any]] = None) -> None:
    """
    Print the spanner set with dataset labels, then the residual connectivity.

    Plain output is one tab separated `rank node score` line per spanner
    followed by a `residual_connectivity` line.
    """
    residual = residual_connectivity(graph, spanners.nodes())
    if as_json:
        payload = dict(extra or {})
        payload.update({
            "k": spanners.capacity,
            "spanners": spanner_rows(spanners, loaded),
            "residual_connectivity": residual,
        })
        print(json.dumps(payload, indent=2))
        return
    for rank, (v, score) in enumerate(spanners, start=1):
        print(f"{rank}\t{loaded.label_of(v)}\t{score}")
    print(f"residual_connectivity\t{residual}")


def cmd_static(args: argparse.Namespace, settings: Dict[str, Any]) -> int:
    """Identify the top-k spanners of a dataset."""
    loaded = load_graph(args.graph, args.format)
    k = args.k or settings["k"]
    result = top_k_greedy(loaded.graph, k)
    print_spanners(result.spanners, loaded, loaded.graph, args.json)
    return EXIT_OK


def cmd_track(args: argparse.Namespace, settings: Dict[str, Any]) -> int:
    """Identify spanners, then keep them current through a stream of deletions."""
    loaded = load_graph(args.graph, args.format)
    events = load_updates(args.updates, loaded)
    k = args.k or settings["k"]
    state = init(loaded.graph, k)

    history = []
    for number, (line, event) in enumerate(events, start=1):
        try:
            spanners = handle_update(state, event, k)
        except EdgeNotFoundError as e:
            raise UpdateFormatError(
                args.updates, line,
                f"edge ({loaded.label_of(event.a)}, {loaded.label_of(event.b)}) is not present") from e
        if args.emit_each:
            labels = [loaded.label_of(v) for v in spanners.nodes()]
            if args.json:
                history.append({
                    "update": number,
                    "edge": [loaded.label_of(event.a), loaded.label_of(event.b)],
                    "spanners": labels,
                })
            else:
                print(f"update\t{number}\t{','.join(labels)}")

    extra = {"updates": history} if args.emit_each else None
    print_spanners(state.spanner_set(), loaded, state.graph, args.json, extra)
    return EXIT_OK


def cmd_bench(args: argparse.Namespace, settings: Dict[str, Any]) -> int:
    """Time tracked updates against recomputation on a random deletion stream."""
    config = BenchConfig(
        graph_path=args.graph,
        k=args.k or settings["k"],
        deletions=settings["deletions"] if args.deletions is None else args.deletions,
        seed=settings["seed"] if args.seed is None else args.seed,
        output_path=args.out,
        fmt=args.format,
        synthetic=tuple(args.synthetic) if args.synthetic else None,
        min_timing_ms=float(settings["min_timing_ms"]),
        progress=bool(settings["progress"]) and not args.no_progress,
    )
    color.print_blue(f"Benchmarking k={config.k} over {config.deletions} deletions (seed {config.seed})...")
    results = run_deletion_stream(config)
    emit_csv(results, config.output_path)
    color.print_green(f"Wrote {len(results)} trials to '{config.output_path}' "
                      f"and '{summary_path(config.output_path)}'")
    if not results:
        print("trials\t0")
        return EXIT_OK

    summary = aggregate(results)
    print(f"gmean\t{summary.gmean:.6f}")
    print(f"min\t{summary.min:.6f}")
    print(f"max\t{summary.max:.6f}")
    print(f"max_quality_ratio\t{summary.max_quality_ratio:.6f}")
    print(f"quality_regressions\t{summary.quality_regressions}")
    print(f"trials\t{summary.trials}")
    if summary.quality_regressions:
        color.print_yellow(f"Warning: tracked spanners left more connectivity than recomputation "
                           f"in {summary.quality_regressions} of {summary.trials} trials")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sh-track",
        description="Structural hole spanners - identify, track under edge deletions, benchmark.")
    parser.add_argument("--config", default=None,
                        help="Path to JSON config file with run settings (default: config.json)")
    subparsers = parser.add_subparsers(dest="command", required=True)

    def add_graph_options(sub: argparse.ArgumentParser, required: bool = True) -> None:
        sub.add_argument("--graph", required=required, help="Dataset file (edge list or GML)")
        sub.add_argument("--format", choices=FORMATS, default=None,
                         help="Dataset format (default: from the file suffix)")
        sub.add_argument("--k", type=positive_int, default=None, help="Number of spanners")

    static = subparsers.add_parser("static", help="Identify the top-k spanners")
    add_graph_options(static)
    static.add_argument("--json", action="store_true", help="Print JSON instead of lines")
    static.set_defaults(handler=cmd_static)

    track = subparsers.add_parser("track", help="Track spanners through edge deletions")
    add_graph_options(track)
    track.add_argument("--updates", required=True, help="File of 'd <u> <v>' lines")
    track.add_argument("--emit-each", action="store_true", help="Print the spanners after every update")
    track.add_argument("--json", action="store_true", help="Print JSON instead of lines")
    track.set_defaults(handler=cmd_track)

    bench = subparsers.add_parser("bench", help="Benchmark tracking against recomputation")
    add_graph_options(bench, required=False)
    bench.add_argument("--synthetic", type=positive_int, nargs=2, metavar=("N", "M"),
                       help="Use a random graph with N nodes and M edges instead of --graph")
    bench.add_argument("--deletions", type=non_negative_int, default=None,
                       help="Number of random edge deletions")
    bench.add_argument("--seed", type=int, default=None, help="Random seed")
    bench.add_argument("--out", default="bench.csv", help="CSV output path")
    bench.add_argument("--no-progress", action="store_true", help="Hide the progress bar")
    bench.set_defaults(handler=cmd_bench)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """
    Parse the command line and run one subcommand.

    Returns:
        int: 0 on success, 2 on any usage or input error.
    """
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "bench" and not (args.graph or args.synthetic):
        parser.error("bench needs --graph or --synthetic")
    if args.command == "bench" and args.graph and args.synthetic:
        parser.error("--graph and --synthetic are mutually exclusive")

    settings = load_settings(args.config)
    configure_logging(settings)

    try:
        return args.handler(args, settings)
    except ShTrackError as e:
        logger.error(f"{args.command} failed: {e}")
        color.print_red(f"Error: {e}")
        return EXIT_USAGE
    except OSError as e:
        logger.error(f"{args.command} failed: {e}")
        color.print_red(f"Error: {e}. Check the path and permissions.")
        return EXIT_USAGE
    except KeyboardInterrupt:
        color.print_yellow("Interrupted.")
        return EXIT_USAGE
    except Exception as e:
        logger.exception(f"Unexpected error in {args.command}")
        color.print_red(f"Unexpected error: {e}")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
