"""Impression-to-stage allocation enumeration."""

from __future__ import annotations

from typing import TYPE_CHECKING

from imro.exceptions import ParameterError

if TYPE_CHECKING:
    from collections.abc import Iterator

Allocation = tuple[int, ...]


def _compositions(total: int, parts: int) -> Iterator[Allocation]:
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first, *rest)


def _bounded(budget: int, parts: int) -> Iterator[Allocation]:
    if parts == 1:
        for first in range(budget + 1):
            yield (first,)
        return
    for first in range(budget + 1):
        for rest in _bounded(budget - first, parts - 1):
            yield (first, *rest)


def enumerate_allocations(
    impressions: int, stages: int, allow_partial: bool = False
) -> list[Allocation]:
    """All allocations ``[m_{K-1}, ..., m_0]`` in lexicographic order.

    Without ``allow_partial`` every allocation spends exactly ``impressions``;
    with it, every total from 0 up to ``impressions`` is included.
    """
    if impressions < 1:
        raise ParameterError(f"impressions must be >= 1, got {impressions}")
    if stages < 1:
        raise ParameterError(f"stages must be >= 1, got {stages}")
    if allow_partial:
        return list(_bounded(impressions, stages))
    return list(_compositions(impressions, stages))
