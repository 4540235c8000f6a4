"""
Loading graphs and update streams.

Datasets come as whitespace separated edge lists or GML files; both are
read through networkx and then mapped onto dense node ids. The original
labels are kept so results can be printed in dataset terms.
"""

import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Tuple, Union

import networkx as nx

from dynamic_spanner import UpdateEvent
from errors import GraphError, GraphFormatError, UpdateFormatError
from graph_core import NodeId, UndirectedGraph, build

logger = logging.getLogger(__name__)

FORMATS = ("edgelist", "gml")


@dataclass
class LoadedGraph:
    """A graph on dense ids plus the dataset label of every id."""

    graph: UndirectedGraph
    labels: List[str]
    name: str = ""
    _ids: Dict[str, NodeId] = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self._ids = {label: v for v, label in enumerate(self.labels)}

    def id_of(self, label: str) -> NodeId:
        return self._ids[label]

    def label_of(self, v: NodeId) -> str:
        return self.labels[v]


def _label_order(labels: List[str]) -> List[str]:
    """Numeric order when every label is an integer, else first appearance."""
    try:
        return sorted(labels, key=int)
    except ValueError:
        return labels


def from_networkx(nx_graph: nx.Graph, name: str = "") -> LoadedGraph:
    """
    Convert a networkx graph into a LoadedGraph.

    Directed or multi graphs are collapsed to a simple undirected graph.

    Raises:
        GraphFormatError: if the graph has self-loops.
    """
    if nx_graph.is_directed() or nx_graph.is_multigraph():
        nx_graph = nx.Graph(nx_graph.to_undirected())
    loops = nx.number_of_selfloops(nx_graph)
    if loops:
        raise GraphFormatError(f"{name or 'graph'}: contains {loops} self-loop(s)")

    labels = _label_order([str(u) for u in nx_graph.nodes])
    ids = {label: v for v, label in enumerate(labels)}
    edges = [(ids[str(u)], ids[str(v)]) for u, v in nx_graph.edges]
    try:
        graph = build(len(labels), edges)
    except GraphError as e:
        raise GraphFormatError(f"{name or 'graph'}: {e}") from e
    return LoadedGraph(graph, labels, name)


def _edge_lines(path: Path) -> List[str]:
    """
    Read edge list lines, rejecting any that carry fewer than two endpoints.

    Extra tokens after the endpoints are left for networkx to ignore.
    """
    lines = []
    with open(path, encoding="utf-8") as f:
        for number, line in enumerate(f, start=1):
            body = line.split("#", 1)[0]
            tokens = body.split()
            if len(tokens) == 1:
                raise GraphFormatError(f"{path}:{number}: edge needs two endpoints, got '{body.strip()}'")
            lines.append(body)
    return lines


def load_graph(path: Union[str, Path], fmt: Optional[str] = None) -> LoadedGraph:
    """
    Load a dataset from an edge list or GML file.

    Args:
        path: Dataset file.
        fmt: "edgelist" or "gml"; inferred from the suffix when None.

    Returns:
        LoadedGraph: The graph with its original labels.

    Raises:
        GraphFormatError: if the file is missing, unreadable or malformed.
    """
    path = Path(path)
    if fmt is None:
        fmt = "gml" if path.suffix.lower() == ".gml" else "edgelist"
    if fmt not in FORMATS:
        raise GraphFormatError(f"Unknown graph format '{fmt}' (expected one of {', '.join(FORMATS)})")
    if not path.is_file():
        raise GraphFormatError(f"Graph file '{path}' does not exist")

    try:
        if fmt == "gml":
            nx_graph = nx.read_gml(path, label="id")
        else:
            nx_graph = nx.parse_edgelist(_edge_lines(path), comments="#", nodetype=str, data=False)
    except (nx.NetworkXError, ValueError, TypeError, IndexError) as e:
        raise GraphFormatError(f"Cannot parse {fmt} file '{path}': {e}") from e
    except OSError as e:
        raise GraphFormatError(f"Cannot read graph file '{path}': {e}") from e

    loaded = from_networkx(nx_graph, path.name)
    logger.info(f"Loaded '{path}' ({fmt}): n={loaded.graph.node_count}, m={loaded.graph.edge_count}")
    return loaded


def karate_graph() -> LoadedGraph:
    """Zachary's karate club (34 nodes, 78 edges)."""
    return from_networkx(nx.karate_club_graph(), "karate")


def synthetic_graph(n: int, m: int, seed: int = 0) -> LoadedGraph:
    """Uniform random graph with exactly n nodes and m edges."""
    return from_networkx(nx.gnm_random_graph(n, m, seed=seed), f"gnm-{n}-{m}-{seed}")


def load_updates(path: Union[str, Path], loaded: LoadedGraph) -> List[Tuple[int, UpdateEvent]]:
    """
    Read an update stream of `d <u> <v>` lines, labels as in the dataset.

    Blank lines and `#` comments are skipped. Returns (line number, event)
    pairs so later failures can name the line.

    Raises:
        UpdateFormatError: naming the offending line.
        GraphFormatError: if the file cannot be read.
    """
    path = Path(path)
    try:
        with open(path, "r", encoding="utf-8") as f:
            lines = f.readlines()
    except OSError as e:
        raise GraphFormatError(f"Cannot read updates file '{path}': {e}") from e

    events = []
    for number, raw in enumerate(lines, start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if tokens[0] != "d":
            raise UpdateFormatError(str(path), number, f"unknown update kind '{tokens[0]}'")
        if len(tokens) != 3:
            raise UpdateFormatError(str(path), number, f"expected 'd <u> <v>', got '{line}'")
        try:
            a, b = loaded.id_of(tokens[1]), loaded.id_of(tokens[2])
        except KeyError as e:
            raise UpdateFormatError(str(path), number, f"unknown node label {e}") from e
        try:
            events.append((number, UpdateEvent(a, b)))
        except GraphError as e:
            raise UpdateFormatError(str(path), number, str(e)) from e
    return events
