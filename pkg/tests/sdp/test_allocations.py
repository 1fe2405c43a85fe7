"""Tests for allocation enumeration."""

from __future__ import annotations

import math

import pytest

from imro.exceptions import ParameterError
from imro.sdp import enumerate_allocations


def test_exact_compositions() -> None:
    """Test M=3, K=2 gives the four compositions in order."""
    assert enumerate_allocations(3, 2) == [(0, 3), (1, 2), (2, 1), (3, 0)]


def test_partial_count() -> None:
    """Test M=3, K=2 with partial allocations."""
    allocations = enumerate_allocations(3, 2, allow_partial=True)
    assert len(allocations) == math.comb(5, 2)
    assert (0, 0) in allocations
    assert allocations == sorted(allocations)


def test_contains_table_allocation() -> None:
    """Test a five-stage allocation with trailing zeros is present."""
    allocations = enumerate_allocations(6, 5)
    assert (2, 1, 3, 0, 0) in allocations
    assert len(allocations) == math.comb(10, 4)


@pytest.mark.parametrize(("m", "k"), [(1, 1), (4, 3), (5, 4)])
def test_counts_and_sums(m: int, k: int) -> None:
    """Test stars-and-bars counts and budget sums."""
    exact = enumerate_allocations(m, k)
    assert len(exact) == math.comb(m + k - 1, k - 1)
    assert all(len(a) == k and sum(a) == m and min(a) >= 0 for a in exact)
    assert exact == sorted(exact)
    partial = enumerate_allocations(m, k, allow_partial=True)
    assert len(partial) == math.comb(m + k, k)
    assert all(sum(a) <= m for a in partial)
    assert set(exact) <= set(partial)


@pytest.mark.parametrize(("m", "k"), [(0, 2), (2, 0), (-1, 1)])
def test_invalid(m: int, k: int) -> None:
    """Test M < 1 or K < 1 is rejected."""
    with pytest.raises(ParameterError):
        enumerate_allocations(m, k)
