"""Exact stochastic dynamic programming for IM-RO."""

from imro.sdp.allocations import Allocation, enumerate_allocations
from imro.sdp.engine import ExactSolver, final_stage_value, solve_sdp, stage_value
from imro.sdp.evaluators import (
    Assignment,
    FixedAssignmentEvaluator,
    SeededPolicyEvaluator,
    evaluate_fixed_assignment,
    evaluate_seeded_policy,
)
from imro.sdp.state import CampaignState, OutcomeBranch, StateSpace, enumerate_outcomes

__all__ = [
    "Allocation",
    "Assignment",
    "CampaignState",
    "ExactSolver",
    "FixedAssignmentEvaluator",
    "OutcomeBranch",
    "SeededPolicyEvaluator",
    "StateSpace",
    "enumerate_allocations",
    "enumerate_outcomes",
    "evaluate_fixed_assignment",
    "evaluate_seeded_policy",
    "final_stage_value",
    "solve_sdp",
    "stage_value",
]
