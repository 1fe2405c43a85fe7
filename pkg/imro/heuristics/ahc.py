"""Random-restart adaptive hill climbing over first-stage users."""

from __future__ import annotations

import math
import time
from typing import TYPE_CHECKING

import numpy as np
import structlog

from imro.exceptions import ParameterError
from imro.models import HeuristicConfig, InfluenceParams, ModelKind, Solution, SolverMethod
from imro.sdp.evaluators import SeededPolicyEvaluator
from imro.sdp.state import StateSpace

if TYPE_CHECKING:
    from imro.graph.core import Graph
    from imro.sdp.allocations import Allocation

logger = structlog.get_logger()


def ahc_allocation(impressions: int, stages: int) -> Allocation:
    """``[1, M-1]`` for two stages, ``[1, M-2, 1]`` for three."""
    if stages not in (2, 3):
        raise ParameterError(f"AHC supports 2 or 3 stages, got {stages}")
    if impressions < stages:
        raise ParameterError(f"AHC with {stages} stages needs M >= {stages}, got {impressions}")
    if stages == 2:
        return (1, impressions - 1)
    return (1, impressions - 2, 1)


def ahc_solve(
    graph: Graph,
    params: InfluenceParams,
    model: ModelKind,
    impressions: int,
    stages: int,
    config: HeuristicConfig | None = None,
    expansion_cap: int = 10**8,
) -> Solution:
    """Best of ``config.iterations`` random first-stage users.

    Users are drawn without replacement until every user has been tried,
    then with replacement. Ties keep the earlier user.
    """
    config = config or HeuristicConfig()
    allocation = ahc_allocation(impressions, stages)
    n = graph.node_count
    if n == 0:
        raise ParameterError("AHC needs a non-empty graph")
    if impressions > n:
        raise ParameterError(f"AHC needs M <= N, got M={impressions}, N={n}")

    start = time.perf_counter()
    rng = np.random.default_rng(config.seed)
    order = rng.permutation(n)
    evaluator = SeededPolicyEvaluator(StateSpace(graph, params, model), expansion_cap)

    best_value, best_user = -math.inf, -1
    for iteration in range(config.iterations):
        user = int(order[iteration]) if iteration < n else int(rng.integers(n))
        value = evaluator(allocation, (user,))
        if value > best_value:
            best_value, best_user = value, user
        logger.debug("ahc_iteration", iteration=iteration, user=user, value=value, best=best_value)
    elapsed = time.perf_counter() - start

    logger.info(
        "ahc_solved",
        iterations=config.iterations,
        seed=config.seed,
        best_user=best_user,
        allocation=list(allocation),
        expected_clicks=best_value,
    )
    return Solution(
        allocation=allocation,
        first_stage_users=(best_user,),
        expected_clicks=best_value,
        elapsed_seconds=elapsed,
        method=SolverMethod.AHC,
    )
