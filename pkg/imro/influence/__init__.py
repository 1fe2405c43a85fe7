"""Influence models for per-user click probabilities."""

from imro.influence.probability import (
    BehaviorCounts,
    click_probability,
    gim_probability,
    nim_probability,
    recompute_probabilities,
)

__all__ = [
    "BehaviorCounts",
    "click_probability",
    "gim_probability",
    "nim_probability",
    "recompute_probabilities",
]
