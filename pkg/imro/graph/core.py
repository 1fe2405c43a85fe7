"""Immutable undirected social graph."""

from __future__ import annotations

from typing import TYPE_CHECKING

import numpy as np

from imro.exceptions import NodeIndexError, ParameterError

if TYPE_CHECKING:
    from collections.abc import Iterable, Iterator, Sequence

NodeId = int


class Graph:
    """Simple undirected graph over dense node ids 0..N-1.

    Adjacency is stored in compressed sparse row form: the neighbors of node
    ``i`` are ``indices[indptr[i]:indptr[i + 1]]``, sorted ascending. Arrays
    are read-only once built.
    """

    __slots__ = ("_indptr", "_indices", "_sources")

    def __init__(self, indptr: np.ndarray, indices: np.ndarray) -> None:
        self._indptr = np.asarray(indptr, dtype=np.int64)
        self._indices = np.asarray(indices, dtype=np.int64)
        degrees = np.diff(self._indptr)
        self._sources = np.repeat(np.arange(degrees.size, dtype=np.int64), degrees)
        for array in (self._indptr, self._indices, self._sources):
            array.flags.writeable = False

    @classmethod
    def from_edges(cls, node_count: int, edges: Iterable[tuple[int, int]]) -> Graph:
        """Build a graph from undirected edges.

        Self-loops and repeated pairs (in either orientation) are dropped.
        """
        if node_count < 0:
            raise ParameterError(f"node_count must be >= 0, got {node_count}")
        pairs = {(min(u, v), max(u, v)) for u, v in edges if u != v}
        for u, v in pairs:
            if u < 0 or v >= node_count:
                raise NodeIndexError(v if v >= node_count else u, node_count)
        if not pairs:
            return cls(np.zeros(node_count + 1, dtype=np.int64), np.zeros(0, dtype=np.int64))
        half = np.array(sorted(pairs), dtype=np.int64)
        rows = np.concatenate([half[:, 0], half[:, 1]])
        cols = np.concatenate([half[:, 1], half[:, 0]])
        order = np.lexsort((cols, rows))
        counts = np.bincount(rows, minlength=node_count)
        indptr = np.concatenate([[0], np.cumsum(counts)])
        return cls(indptr, cols[order])

    @property
    def node_count(self) -> int:
        """Number of nodes N."""
        return int(self._indptr.size - 1)

    @property
    def edge_count(self) -> int:
        """Number of undirected edges."""
        return int(self._indices.size // 2)

    @property
    def indptr(self) -> np.ndarray:
        return self._indptr

    @property
    def indices(self) -> np.ndarray:
        return self._indices

    @property
    def edge_sources(self) -> np.ndarray:
        """Row index of every entry in :attr:`indices`."""
        return self._sources

    @property
    def degrees(self) -> np.ndarray:
        return np.diff(self._indptr)

    def _check(self, node: int) -> None:
        if not 0 <= node < self.node_count:
            raise NodeIndexError(node, self.node_count)

    def neighbors(self, node: NodeId) -> np.ndarray:
        """Sorted neighbor ids of ``node``."""
        self._check(node)
        return self._indices[self._indptr[node] : self._indptr[node + 1]]

    def degree(self, node: NodeId) -> int:
        """Number of friends of ``node``."""
        self._check(node)
        return int(self._indptr[node + 1] - self._indptr[node])

    def max_degree_node(self) -> NodeId:
        """Node of highest degree, lowest id on ties."""
        if self.node_count == 0:
            raise ParameterError("max_degree_node of an empty graph")
        # argmax returns the first maximum
        return int(np.argmax(self.degrees))

    def edges(self) -> Iterator[tuple[int, int]]:
        """Yield every edge once as ``(u, v)`` with ``u < v``, ascending."""
        for u, v in zip(self._sources.tolist(), self._indices.tolist()):
            if u < v:
                yield u, v

    def is_symmetric(self) -> bool:
        """Check that ``j in adj(i)`` iff ``i in adj(j)``."""
        forward = set(zip(self._sources.tolist(), self._indices.tolist()))
        return all((v, u) in forward for u, v in forward)

    def relabel(self, permutation: Sequence[int]) -> Graph:
        """Return the graph with node ``i`` renamed to ``permutation[i]``."""
        if sorted(permutation) != list(range(self.node_count)):
            raise ParameterError("relabel needs a permutation of 0..N-1")
        return Graph.from_edges(
            self.node_count, ((permutation[u], permutation[v]) for u, v in self.edges())
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return np.array_equal(self._indptr, other._indptr) and np.array_equal(
            self._indices, other._indices
        )

    def __reduce__(self) -> tuple[type[Graph], tuple[np.ndarray, np.ndarray]]:
        return (Graph, (np.array(self._indptr), np.array(self._indices)))

    def __hash__(self) -> int:
        return hash((self._indptr.tobytes(), self._indices.tobytes()))

    def __repr__(self) -> str:
        return f"Graph(node_count={self.node_count}, edge_count={self.edge_count})"


def degree(graph: Graph, node: NodeId) -> int:
    """Number of friends of ``node`` in ``graph``."""
    return graph.degree(node)


def max_degree_node(graph: Graph) -> NodeId:
    """Highest-degree node of ``graph``, lowest id on ties."""
    return graph.max_degree_node()
