"""Seeded synthetic graph generation."""

from __future__ import annotations

import numpy as np
import structlog

from imro.exceptions import ParameterError
from imro.graph.core import Graph
from imro.graph.mt64 import MersenneTwister64

logger = structlog.get_logger()

DEFAULT_EDGE_PROBABILITY = 0.6


def generate_synthetic(
    n: int,
    edge_probability: float = DEFAULT_EDGE_PROBABILITY,
    seed: int = 0,
) -> Graph:
    """Draw an Erdos-Renyi G(n, p) graph.

    Pairs ``(i, j)`` with ``i < j`` are visited row by row and each consumes
    one MT19937-64 double ``u``; the edge is kept when ``u < p``.
    """
    if n < 0:
        raise ParameterError(f"n must be >= 0, got {n}")
    if not 0.0 <= edge_probability <= 1.0:
        raise ParameterError(f"edge_probability must be in [0, 1], got {edge_probability}")
    if not 0 <= seed < 2**64:
        raise ParameterError(f"seed must be a 64-bit unsigned integer, got {seed}")

    rng = MersenneTwister64(seed)
    degrees = np.zeros(n, dtype=np.int64)
    sources: list[np.ndarray] = []
    targets: list[np.ndarray] = []
    for i in range(n - 1):
        draws = rng.random(n - i - 1)
        hits = np.flatnonzero(draws < edge_probability) + (i + 1)
        if hits.size:
            sources.append(np.full(hits.size, i, dtype=np.int64))
            targets.append(hits)
            degrees[i] += hits.size
            degrees[hits] += 1

    if sources:
        src = np.concatenate(sources)
        dst = np.concatenate(targets)
        rows = np.concatenate([src, dst])
        cols = np.concatenate([dst, src])
        order = np.lexsort((cols, rows))
        indices = cols[order]
    else:
        indices = np.zeros(0, dtype=np.int64)
    indptr = np.concatenate([[0], np.cumsum(degrees)])

    graph = Graph(indptr, indices)
    logger.debug(
        "synthetic_graph_generated",
        n=n,
        edge_probability=edge_probability,
        seed=seed,
        edges=graph.edge_count,
    )
    return graph


def edge_probability_for_degree(n: int, average_degree: float) -> float:
    """Edge probability giving an expected average degree in G(n, p)."""
    if n < 2:
        return 0.0
    return min(1.0, max(0.0, average_degree / (n - 1)))
