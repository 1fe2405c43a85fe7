"""Highest-degree seeding heuristic."""

from __future__ import annotations

import time
from typing import TYPE_CHECKING

import structlog

from imro.exceptions import ParameterError
from imro.models import InfluenceParams, ModelKind, Solution, SolverMethod
from imro.sdp.evaluators import SeededPolicyEvaluator
from imro.sdp.state import StateSpace

if TYPE_CHECKING:
    from imro.graph.core import Graph
    from imro.sdp.allocations import Allocation

logger = structlog.get_logger()


def ldh_allocation(impressions: int, stages: int) -> Allocation:
    """``[1, M-1]`` for two stages, ``[1, 1, M-2]`` for three."""
    if stages not in (2, 3):
        raise ParameterError(f"LDH supports 2 or 3 stages, got {stages}")
    if impressions < stages:
        raise ParameterError(f"LDH with {stages} stages needs M >= {stages}, got {impressions}")
    if stages == 2:
        return (1, impressions - 1)
    return (1, 1, impressions - 2)


def ldh_solve(
    graph: Graph,
    params: InfluenceParams,
    model: ModelKind,
    impressions: int,
    stages: int,
    expansion_cap: int = 10**8,
) -> Solution:
    """Seed the first stage with the highest-degree user and evaluate once."""
    allocation = ldh_allocation(impressions, stages)
    if graph.node_count == 0:
        raise ParameterError("LDH needs a non-empty graph")
    if impressions > graph.node_count:
        raise ParameterError(f"LDH needs M <= N, got M={impressions}, N={graph.node_count}")

    start = time.perf_counter()
    seed_user = graph.max_degree_node()
    evaluator = SeededPolicyEvaluator(StateSpace(graph, params, model), expansion_cap)
    value = evaluator(allocation, (seed_user,))
    elapsed = time.perf_counter() - start

    logger.info(
        "ldh_solved",
        seed_user=seed_user,
        degree=graph.degree(seed_user),
        allocation=list(allocation),
        expected_clicks=value,
    )
    return Solution(
        allocation=allocation,
        first_stage_users=(seed_user,),
        expected_clicks=value,
        elapsed_seconds=elapsed,
        method=SolverMethod.LDH,
    )
