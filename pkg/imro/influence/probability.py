"""Click probabilities under the graph and negative influence models."""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np

from imro.exceptions import ParameterError, ShapeError
from imro.models import InfluenceParams, ModelKind

if TYPE_CHECKING:
    from imro.graph.core import Graph


@dataclass(frozen=True)
class BehaviorCounts:
    """Observed behavior of one user's friends so far."""

    clicked: int
    ignored: int
    friends: int

    def __post_init__(self) -> None:
        if min(self.clicked, self.ignored, self.friends) < 0:
            raise ParameterError(f"behavior counts must be non-negative: {self}")
        if self.clicked + self.ignored > self.friends:
            raise ParameterError(f"clicked + ignored exceeds friend count: {self}")


def _clamp(value: float) -> float:
    return min(1.0, max(0.0, value))


def gim_probability(
    params: InfluenceParams, counts: BehaviorCounts, p0: float | None = None
) -> float:
    """Click probability under the graph influence model.

    ``p0 + (1 - (1 - alpha*y/f)**f)`` clamped to [0, 1]. The base may go
    negative when ``alpha*y/f > 1``; the integer power is taken as written.
    """
    base = params.p0 if p0 is None else p0
    f = counts.friends
    if f == 0:
        return base
    return _clamp(base + (1.0 - (1.0 - params.alpha * counts.clicked / f) ** f))


def nim_probability(
    params: InfluenceParams, counts: BehaviorCounts, p0: float | None = None
) -> float:
    """Click probability under the negative influence model.

    ``p0 + alpha*y/f - beta*n/f`` clamped to [0, 1].
    """
    base = params.p0 if p0 is None else p0
    f = counts.friends
    if f == 0:
        return base
    return _clamp(base + params.alpha * counts.clicked / f - params.beta * counts.ignored / f)


def click_probability(
    params: InfluenceParams, model: ModelKind, counts: BehaviorCounts, p0: float | None = None
) -> float:
    """Dispatch to the scalar formula of ``model``."""
    if model is ModelKind.GIM:
        return gim_probability(params, counts, p0)
    return nim_probability(params, counts, p0)


def _as_flags(name: str, flags: np.ndarray, node_count: int) -> np.ndarray:
    array = np.asarray(flags, dtype=bool)
    if array.shape != (node_count,):
        raise ShapeError(name, node_count, int(array.size))
    return array


def recompute_probabilities(
    graph: Graph,
    params: InfluenceParams,
    model: ModelKind,
    clicked: np.ndarray,
    given: np.ndarray,
    base: np.ndarray | None = None,
) -> np.ndarray:
    """Click probability of every user from cumulative neighborhood behavior.

    Probabilities always restart from the base ``p0`` (or the per-user
    ``base`` array) and use all clicks and non-clicks observed so far.
    """
    n = graph.node_count
    clicked = _as_flags("clicked", clicked, n)
    given = _as_flags("given", given, n)
    if np.any(clicked & ~given):
        raise ParameterError("a user has clicked without being given an impression")
    if base is None:
        base_probs = np.full(n, params.p0, dtype=np.float64)
    else:
        base_probs = np.asarray(base, dtype=np.float64)
        if base_probs.shape != (n,):
            raise ShapeError("base", n, int(base_probs.size))
        if np.any((base_probs < 0.0) | (base_probs > 1.0)):
            raise ParameterError("base probabilities must lie in [0, 1]")

    sources = graph.edge_sources
    neighbors = graph.indices
    y = np.bincount(sources, weights=clicked[neighbors], minlength=n).astype(np.int64)
    ignored = given & ~clicked
    ignored_counts = np.bincount(sources, weights=ignored[neighbors], minlength=n).astype(np.int64)
    f = graph.degrees
    has_friends = f > 0
    safe_f = np.where(has_friends, f, 1)

    if model is ModelKind.GIM:
        influenced = base_probs + (1.0 - (1.0 - params.alpha * y / safe_f) ** f)
    else:
        influenced = base_probs + params.alpha * y / safe_f - params.beta * ignored_counts / safe_f
    return np.where(has_friends, np.clip(influenced, 0.0, 1.0), base_probs)
