"""Test fixtures and utilities."""

from __future__ import annotations

from collections.abc import Iterator

import pytest
import structlog

from imro.config import settings
from imro.graph import Graph
from imro.models import InfluenceParams


@pytest.fixture(autouse=True)
def restore_settings() -> Iterator[None]:
    """Undo settings and logging changes made by CLI invocations."""
    saved = settings.model_dump()
    yield
    for name, value in saved.items():
        setattr(settings, name, value)
    structlog.reset_defaults()


@pytest.fixture
def params() -> InfluenceParams:
    """Default experimental parameters p0 = alpha = beta = 0.25."""
    return InfluenceParams(p0=0.25, alpha=0.25, beta=0.25)


@pytest.fixture
def pair_graph() -> Graph:
    """Two friends."""
    return Graph.from_edges(2, [(0, 1)])


@pytest.fixture
def star_graph() -> Graph:
    """Star with center 0 and four leaves."""
    return Graph.from_edges(5, [(0, 1), (0, 2), (0, 3), (0, 4)])


@pytest.fixture
def complete5() -> Graph:
    """Complete graph on five nodes."""
    return Graph.from_edges(5, [(u, v) for u in range(5) for v in range(u + 1, 5)])
