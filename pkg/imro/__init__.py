"""Influence maximization and revenue optimization solvers."""

from __future__ import annotations

from imro.config import settings

__version__ = "0.1.0"

__all__ = ["__version__", "settings"]
