"""Tests for heuristics module."""
