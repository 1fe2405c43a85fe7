"""Tests for sdp module."""
