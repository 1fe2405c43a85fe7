"""Edge-list reading and writing."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import TYPE_CHECKING, TextIO

import structlog

from imro.exceptions import DataError, EdgeListParseError
from imro.graph.core import Graph

if TYPE_CHECKING:
    from collections.abc import Iterable
    from pathlib import Path

logger = structlog.get_logger()


@dataclass
class EdgeListReport:
    """What happened while ingesting an edge list."""

    edges_read: int = 0
    duplicates_dropped: int = 0
    self_loops_dropped: int = 0
    id_map: tuple[int, ...] | None = field(default=None)

    @property
    def edges_kept(self) -> int:
        return self.edges_read - self.duplicates_dropped - self.self_loops_dropped


def _parse_line(line_number: int, line: str) -> tuple[int, int]:
    fields = line.split(",")
    if len(fields) != 2:
        raise EdgeListParseError(line_number, line)
    try:
        u, v = int(fields[0].strip()), int(fields[1].strip())
    except ValueError:
        raise EdgeListParseError(line_number, line) from None
    if u < 0 or v < 0:
        raise EdgeListParseError(line_number, line)
    return u, v


def parse_edge_list(source: Iterable[str], compact: bool = False) -> tuple[Graph, EdgeListReport]:
    """Parse ``u,v`` lines into a graph and an ingest report.

    Blank lines and ``#`` comments are skipped. Without ``compact`` the node
    ids are kept as written and the graph spans 0..max_id; with it, the ids
    that occur are renumbered densely in ascending order.
    """
    report = EdgeListReport()
    seen: set[tuple[int, int]] = set()
    ids: set[int] = set()
    edges: list[tuple[int, int]] = []

    for line_number, raw in enumerate(source, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        u, v = _parse_line(line_number, line)
        report.edges_read += 1
        ids.update((u, v))
        if u == v:
            report.self_loops_dropped += 1
            continue
        key = (min(u, v), max(u, v))
        if key in seen:
            report.duplicates_dropped += 1
            continue
        seen.add(key)
        edges.append(key)

    if compact:
        ordered = sorted(ids)
        position = {node: i for i, node in enumerate(ordered)}
        edges = [(position[u], position[v]) for u, v in edges]
        report.id_map = tuple(ordered)
        node_count = len(ordered)
    else:
        node_count = max(ids) + 1 if ids else 0

    graph = Graph.from_edges(node_count, edges)
    logger.info(
        "edge_list_loaded",
        nodes=graph.node_count,
        edges=graph.edge_count,
        duplicates_dropped=report.duplicates_dropped,
        self_loops_dropped=report.self_loops_dropped,
        compact=compact,
    )
    return graph, report


def load_edge_list(source: Iterable[str], compact: bool = False) -> Graph:
    """Parse ``u,v`` lines into a graph."""
    graph, _ = parse_edge_list(source, compact=compact)
    return graph


def read_edge_list(path: Path, compact: bool = False) -> tuple[Graph, EdgeListReport]:
    """Read an edge-list file."""
    try:
        with path.open(encoding="utf-8", newline="") as handle:
            return parse_edge_list(handle, compact=compact)
    except OSError as e:
        raise DataError(f"Cannot read edge list {path}: {e.strerror or e}") from e
    except EdgeListParseError as e:
        raise EdgeListParseError(e.line_number, e.line, path=str(path)) from e


def write_edge_list(graph: Graph, sink: TextIO) -> None:
    """Write every edge once as a ``u,v`` line, ascending."""
    for u, v in graph.edges():
        sink.write(f"{u},{v}\n")
