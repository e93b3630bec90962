"""Plain-text edge lists.

Format: a header line ``n <N>``, then one edge per line as ``u v`` or
``u v w``.  Fields are whitespace separated and ``#`` starts a comment.
Either every edge carries a weight or none does.
"""

from __future__ import annotations

import io
import os
from typing import Iterable, TextIO

from .errors import InvalidArgument
from .graph import Graph, WeightedGraph


def parse_edge_list(stream: TextIO, *, source: str = "<input>") -> Graph | WeightedGraph:
    n = None
    edges: list[tuple[int, int]] = []
    weights: list[float] = []
    for lineno, raw in enumerate(stream, 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        try:
            if n is None:
                if len(fields) != 2 or fields[0] != "n":
                    raise InvalidArgument("expected header 'n <N>'")
                n = int(fields[1])
                continue
            if len(fields) not in (2, 3):
                raise InvalidArgument("expected 'u v' or 'u v w'")
            edges.append((int(fields[0]), int(fields[1])))
            if len(fields) == 3:
                weights.append(float(fields[2]))
        except ValueError as exc:
            raise InvalidArgument(f"{source}:{lineno}: {exc}") from exc
    if n is None:
        raise InvalidArgument(f"{source}: missing 'n <N>' header")
    graph = Graph(n, edges)
    if not weights:
        return graph
    if len(weights) != len(edges):
        raise InvalidArgument(f"{source}: some edges have weights and some do not")
    return WeightedGraph(graph, weights)


def read_edge_list(path: str | os.PathLike) -> Graph | WeightedGraph:
    with open(path, encoding="utf-8") as fh:
        return parse_edge_list(fh, source=str(path))


def loads(text: str) -> Graph | WeightedGraph:
    return parse_edge_list(io.StringIO(text))


def format_edge_list(g: Graph | WeightedGraph, edge_ids: Iterable[int] | None = None) -> str:
    """Render ``g`` (optionally only ``edge_ids``) in edge-list format."""
    graph = g.graph if isinstance(g, WeightedGraph) else g
    ids = range(graph.m) if edge_ids is None else edge_ids
    lines = [f"n {graph.n}"]
    pairs = graph.edges
    for i in ids:
        u, v = pairs[i]
        if isinstance(g, WeightedGraph):
            lines.append(f"{u} {v} {float(g.weights[i])!r}")
        else:
            lines.append(f"{u} {v}")
    return "\n".join(lines) + "\n"


def write_edge_list(path: str | os.PathLike, g: Graph | WeightedGraph,
                    edge_ids: Iterable[int] | None = None) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_edge_list(g, edge_ids))
