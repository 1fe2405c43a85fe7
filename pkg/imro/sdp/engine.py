"""Exact stochastic dynamic programming solver."""

from __future__ import annotations

import itertools
import math
import time
from concurrent.futures import ProcessPoolExecutor
from typing import TYPE_CHECKING

import numpy as np
import structlog

from imro.exceptions import BudgetExceededError, ParameterError
from imro.models import InfluenceParams, ModelKind, SDPOptions, Solution, SolverMethod
from imro.sdp.allocations import enumerate_allocations
from imro.sdp.state import StateSpace, enumerate_outcomes, expected_clicks

if TYPE_CHECKING:
    from collections.abc import Sequence

    from imro.graph.core import Graph
    from imro.sdp.allocations import Allocation
    from imro.sdp.state import CampaignState

logger = structlog.get_logger()

StageResult = tuple[float, tuple[int, ...]]


def final_stage_value(probs: np.ndarray, given: np.ndarray, m: int) -> StageResult:
    """Best value of a stage after which nothing more is observed.

    Picks the ``m`` ungiven users with the largest probability, lowest id on
    ties; all ungiven users when fewer than ``m`` remain. Users are returned
    in ascending id order.
    """
    if m < 0:
        raise ParameterError(f"m must be >= 0, got {m}")
    candidates = np.flatnonzero(~np.asarray(given, dtype=bool))
    order = candidates[np.lexsort((candidates, -probs[candidates]))]
    chosen = sorted(order[:m].tolist())
    return expected_clicks(probs, chosen), tuple(chosen)


class ExactSolver:
    """Bellman recursion over (history, remaining allocation), memoized.

    Later-stage users are re-optimized for every outcome branch. Among equal
    values the lexicographically smallest user subset wins.
    """

    def __init__(
        self,
        space: StateSpace,
        expansion_cap: int = 10**8,
        max_outcome_users: int = 20,
    ) -> None:
        self.space = space
        self.expansion_cap = expansion_cap
        self.max_outcome_users = max_outcome_users
        self.expansions = 0
        self._memo: dict[tuple[tuple[bytes, bytes], Allocation], StageResult] = {}

    def value(self, state: CampaignState, remaining: Sequence[int]) -> StageResult:
        """Optimal expected clicks from ``state`` with ``remaining`` stage counts."""
        remaining = tuple(remaining)
        if not remaining:
            return 0.0, ()
        key = (state.key, remaining)
        cached = self._memo.get(key)
        if cached is None:
            cached = self._solve(state, remaining)
            self._memo[key] = cached
        return cached

    def _solve(self, state: CampaignState, remaining: Allocation) -> StageResult:
        m, rest = remaining[0], remaining[1:]
        if not any(rest):
            return final_stage_value(state.probs, state.given, m)
        if m == 0:
            value, _ = self.value(self.space.skip(state), rest)
            return value, ()

        ungiven = state.ungiven().tolist()
        required = math.comb(len(ungiven), m) * 2**m
        if required > self.expansion_cap:
            raise BudgetExceededError(required, self.expansion_cap)
        self.expansions += required

        best_value, best_users = -math.inf, ()
        for users in itertools.combinations(ungiven, m):
            terms = []
            for branch in enumerate_outcomes(users, state.probs, self.max_outcome_users):
                future, _ = self.value(self.space.advance(state, users, branch.outcome), rest)
                terms.append(branch.probability * (branch.clicks + future))
            total = math.fsum(terms)
            if total > best_value:
                best_value, best_users = total, users
        return best_value, best_users


def stage_value(
    graph: Graph,
    params: InfluenceParams,
    model: ModelKind,
    state: CampaignState,
    allocation: Sequence[int],
    stage_index: int,
    options: SDPOptions | None = None,
) -> StageResult:
    """Optimal expected clicks of ``allocation[stage_index:]`` from ``state``."""
    options = options or SDPOptions()
    if not 0 <= stage_index < len(allocation):
        raise ParameterError(f"stage_index {stage_index} outside allocation of {len(allocation)}")
    remaining = tuple(allocation[stage_index:])
    available = int(state.ungiven().size)
    if sum(remaining) > available:
        raise ParameterError(
            f"allocation places {sum(remaining)} impressions but only {available} users remain"
        )
    solver = ExactSolver(
        StateSpace(graph, params, model), options.expansion_cap, options.max_outcome_users
    )
    return solver.value(state, remaining)


def _evaluate_chunk(
    graph: Graph,
    params: InfluenceParams,
    model: ModelKind,
    options: SDPOptions,
    allocations: list[Allocation],
) -> tuple[list[StageResult], int]:
    space = StateSpace(graph, params, model)
    solver = ExactSolver(space, options.expansion_cap, options.max_outcome_users)
    state = space.initial(len(allocations[0]) if allocations else 0)
    results = [solver.value(state, allocation) for allocation in allocations]
    return results, solver.expansions


def _chunks(items: list[Allocation], count: int) -> list[list[Allocation]]:
    size = math.ceil(len(items) / count)
    return [items[i : i + size] for i in range(0, len(items), size)]


def solve_sdp(
    graph: Graph,
    params: InfluenceParams,
    model: ModelKind,
    impressions: int,
    stages: int,
    options: SDPOptions | None = None,
) -> Solution:
    """Best allocation and first-stage users over all allocations.

    Among allocations of equal value the lexicographically first is kept.
    """
    options = options or SDPOptions()
    if graph.node_count < 1:
        raise ParameterError("solve_sdp needs a graph with at least one node")
    if impressions > graph.node_count:
        raise ParameterError(
            f"M = {impressions} exceeds the {graph.node_count} users of the graph; "
            "each user takes at most one impression"
        )
    allocations = enumerate_allocations(impressions, stages, options.allow_partial)

    logger.info(
        "sdp_solve_started",
        nodes=graph.node_count,
        impressions=impressions,
        stages=stages,
        model=model.value,
        allocations=len(allocations),
        jobs=options.jobs,
    )
    start = time.perf_counter()
    if options.jobs > 1 and len(allocations) > 1:
        chunks = _chunks(allocations, options.jobs)
        with ProcessPoolExecutor(max_workers=options.jobs) as pool:
            parts = pool.map(
                _evaluate_chunk,
                itertools.repeat(graph),
                itertools.repeat(params),
                itertools.repeat(model),
                itertools.repeat(options),
                chunks,
            )
            done = list(parts)
        results = [result for part, _ in done for result in part]
        expansions = sum(count for _, count in done)
    else:
        results, expansions = _evaluate_chunk(graph, params, model, options, allocations)

    best_index = 0
    for index, (value, _) in enumerate(results):
        if value > results[best_index][0]:
            best_index = index
    elapsed = time.perf_counter() - start

    value, users = results[best_index]
    solution = Solution(
        allocation=allocations[best_index],
        first_stage_users=users,
        expected_clicks=value,
        elapsed_seconds=elapsed,
        method=SolverMethod.SDP,
    )
    logger.info(
        "sdp_solved",
        allocation=list(solution.allocation),
        users=list(solution.first_stage_users),
        expected_clicks=value,
        expansions=expansions,
        elapsed_seconds=round(elapsed, 6),
    )
    return solution
