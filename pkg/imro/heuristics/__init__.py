"""Scalable heuristics: LDH, AHC and MPSO."""

from imro.heuristics.ahc import ahc_allocation, ahc_solve
from imro.heuristics.ldh import ldh_allocation, ldh_solve
from imro.heuristics.mpso import Particle, mpso_solve
from imro.heuristics.swap import (
    Exchange,
    Insert,
    Position,
    Remove,
    SwapOp,
    SwapSequence,
    apply_sequence,
    apply_swap,
    subtract_solutions,
)

__all__ = [
    "Exchange",
    "Insert",
    "Particle",
    "Position",
    "Remove",
    "SwapOp",
    "SwapSequence",
    "ahc_allocation",
    "ahc_solve",
    "apply_sequence",
    "apply_swap",
    "ldh_allocation",
    "ldh_solve",
    "mpso_solve",
    "subtract_solutions",
]
