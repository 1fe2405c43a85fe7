"""Tests for experiment module."""
