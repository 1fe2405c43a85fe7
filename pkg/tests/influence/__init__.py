"""Tests for influence module."""
