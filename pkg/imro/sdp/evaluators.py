"""Expected clicks of fixed assignments and seeded greedy policies."""

from __future__ import annotations

import math
from typing import TYPE_CHECKING

from imro.exceptions import AssignmentError, BudgetExceededError, NodeIndexError, ParameterError
from imro.sdp.engine import final_stage_value
from imro.sdp.state import (
    DEFAULT_MAX_OUTCOME_USERS,
    CampaignState,
    StateSpace,
    enumerate_outcomes,
    expected_clicks,
)

if TYPE_CHECKING:
    from collections.abc import Sequence

    import numpy as np

    from imro.graph.core import Graph
    from imro.models import InfluenceParams, ModelKind

Assignment = tuple[tuple[int, ...], ...]


def _check_users(users: Sequence[int], node_count: int) -> None:
    seen: set[int] = set()
    for user in users:
        if not 0 <= user < node_count:
            raise NodeIndexError(user, node_count)
        if user in seen:
            raise AssignmentError(f"user {user} is given more than one impression")
        seen.add(user)


class FixedAssignmentEvaluator:
    """Expected clicks when every stage's users are fixed up front.

    Users do not depend on realized outcomes; probabilities are still updated
    between stages. Results are memoized per assignment.
    """

    def __init__(
        self,
        space: StateSpace,
        expansion_cap: int = 10**8,
        max_outcome_users: int = DEFAULT_MAX_OUTCOME_USERS,
    ) -> None:
        self.space = space
        self.expansion_cap = expansion_cap
        self.max_outcome_users = max_outcome_users
        self.evaluations = 0
        self._memo: dict[Assignment, float] = {}

    def __call__(self, assignment: Sequence[Sequence[int]]) -> float:
        stages: Assignment = tuple(tuple(int(u) for u in stage) for stage in assignment)
        cached = self._memo.get(stages)
        if cached is not None:
            return cached
        _check_users([u for stage in stages for u in stage], self.space.graph.node_count)
        required = 2 ** sum(len(stage) for stage in stages)
        if required > self.expansion_cap:
            raise BudgetExceededError(required, self.expansion_cap)
        self.evaluations += 1
        value = self._expected(self.space.initial(len(stages)), stages) if stages else 0.0
        self._memo[stages] = value
        return value

    def _expected(self, state: CampaignState, stages: Assignment) -> float:
        users, rest = stages[0], stages[1:]
        if not any(rest):
            return expected_clicks(state.probs, users)
        terms = []
        for branch in enumerate_outcomes(users, state.probs, self.max_outcome_users):
            future = self._expected(self.space.advance(state, users, branch.outcome), rest)
            terms.append(branch.probability * (branch.clicks + future))
        return math.fsum(terms)


def evaluate_fixed_assignment(
    graph: Graph,
    params: InfluenceParams,
    model: ModelKind,
    assignment: Sequence[Sequence[int]],
    expansion_cap: int = 10**8,
    base: np.ndarray | None = None,
) -> float:
    """Expected clicks of a non-adaptive per-stage user assignment."""
    evaluator = FixedAssignmentEvaluator(StateSpace(graph, params, model, base), expansion_cap)
    return evaluator(assignment)


class SeededPolicyEvaluator:
    """Expected clicks of a fixed first stage followed by adaptive greedy stages.

    After the first stage, every outcome branch gives its next stage to the
    ``m_k`` ungiven users of highest current probability (lowest id on ties),
    which is exact for the last stage.
    """

    def __init__(
        self,
        space: StateSpace,
        expansion_cap: int = 10**8,
        max_outcome_users: int = DEFAULT_MAX_OUTCOME_USERS,
    ) -> None:
        self.space = space
        self.expansion_cap = expansion_cap
        self.max_outcome_users = max_outcome_users
        self.evaluations = 0

    def __call__(self, allocation: Sequence[int], first_users: Sequence[int]) -> float:
        allocation = tuple(allocation)
        first = tuple(int(u) for u in first_users)
        if not allocation:
            raise ParameterError("allocation must have at least one stage")
        if len(first) != allocation[0]:
            raise ParameterError(
                f"first stage places {allocation[0]} impressions but {len(first)} users given"
            )
        _check_users(first, self.space.graph.node_count)
        # the last non-empty stage is resolved in closed form
        nonempty = [k for k, m in enumerate(allocation) if m]
        required = 2 ** sum(allocation[: nonempty[-1]]) if nonempty else 1
        if required > self.expansion_cap:
            raise BudgetExceededError(required, self.expansion_cap)
        self.evaluations += 1
        state = self.space.initial(len(allocation))
        return self._expand(state, first, allocation[1:])

    def _expand(self, state: CampaignState, users: tuple[int, ...], rest: tuple[int, ...]) -> float:
        if not any(rest):
            return expected_clicks(state.probs, users)
        terms = []
        for branch in enumerate_outcomes(users, state.probs, self.max_outcome_users):
            future = self._greedy(self.space.advance(state, users, branch.outcome), rest)
            terms.append(branch.probability * (branch.clicks + future))
        return math.fsum(terms)

    def _greedy(self, state: CampaignState, remaining: tuple[int, ...]) -> float:
        m, rest = remaining[0], remaining[1:]
        value, users = final_stage_value(state.probs, state.given, m)
        if not any(rest):
            return value
        return self._expand(state, users, rest)


def evaluate_seeded_policy(
    graph: Graph,
    params: InfluenceParams,
    model: ModelKind,
    allocation: Sequence[int],
    first_users: Sequence[int],
    expansion_cap: int = 10**8,
    base: np.ndarray | None = None,
) -> float:
    """Expected clicks of seeding the first stage with ``first_users``."""
    evaluator = SeededPolicyEvaluator(StateSpace(graph, params, model, base), expansion_cap)
    return evaluator(allocation, first_users)
