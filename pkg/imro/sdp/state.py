"""Campaign state, stage transitions and outcome branches."""

from __future__ import annotations

import itertools
import math
from collections import OrderedDict
from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np

from imro.exceptions import BudgetExceededError
from imro.influence.probability import recompute_probabilities

if TYPE_CHECKING:
    from collections.abc import Sequence

    from imro.graph.core import Graph
    from imro.models import InfluenceParams, ModelKind

DEFAULT_MAX_OUTCOME_USERS = 20
# Probability arrays kept per state space, in float64 entries.
_CACHE_FLOATS = 4_000_000


@dataclass(frozen=True)
class OutcomeBranch:
    """One realization of click / no-click for a stage's users."""

    outcome: tuple[bool, ...]
    probability: float
    clicks: int


def enumerate_outcomes(
    users: Sequence[int],
    probs: np.ndarray,
    max_users: int = DEFAULT_MAX_OUTCOME_USERS,
) -> list[OutcomeBranch]:
    """Every click outcome of ``users`` with its probability.

    Branches come in binary counting order with the first user most
    significant and "clicked" before "not clicked".
    """
    if len(users) > max_users:
        raise BudgetExceededError(2 ** len(users), 2**max_users, what="outcome branches")
    p = [float(probs[u]) for u in users]
    branches = []
    for outcome in itertools.product((True, False), repeat=len(users)):
        weight = 1.0
        for pi, clicked in zip(p, outcome):
            weight *= pi if clicked else 1.0 - pi
        branches.append(OutcomeBranch(outcome, weight, sum(outcome)))
    return branches


@dataclass(frozen=True, eq=False)
class CampaignState:
    """Who has been given an impression, who clicked, and current probabilities."""

    given: np.ndarray
    clicked: np.ndarray
    probs: np.ndarray
    stages_remaining: int

    @property
    def key(self) -> tuple[bytes, bytes]:
        """Hashable identity of the observed history."""
        return self.given.tobytes(), self.clicked.tobytes()

    @property
    def impressions_spent(self) -> int:
        return int(self.given.sum())

    def ungiven(self) -> np.ndarray:
        """Ids of users still eligible for an impression."""
        return np.flatnonzero(~self.given)


class StateSpace:
    """Builds campaign states for one graph, parameter set and model.

    Probability arrays are cached per observed history, so states reached
    along different paths share them.
    """

    def __init__(
        self,
        graph: Graph,
        params: InfluenceParams,
        model: ModelKind,
        base: np.ndarray | None = None,
    ) -> None:
        self.graph = graph
        self.params = params
        self.model = model
        self.base = base
        self._cache: OrderedDict[tuple[bytes, bytes], np.ndarray] = OrderedDict()
        self._cache_limit = max(16, _CACHE_FLOATS // max(graph.node_count, 1))

    def probabilities(self, given: np.ndarray, clicked: np.ndarray) -> np.ndarray:
        key = (given.tobytes(), clicked.tobytes())
        probs = self._cache.get(key)
        if probs is not None:
            self._cache.move_to_end(key)
            return probs
        probs = recompute_probabilities(
            self.graph, self.params, self.model, clicked, given, base=self.base
        )
        probs.flags.writeable = False
        self._cache[key] = probs
        if len(self._cache) > self._cache_limit:
            self._cache.popitem(last=False)
        return probs

    def initial(self, stages: int) -> CampaignState:
        """State before the first stage: nobody given, nobody clicked."""
        n = self.graph.node_count
        given = np.zeros(n, dtype=bool)
        clicked = np.zeros(n, dtype=bool)
        given.flags.writeable = False
        clicked.flags.writeable = False
        return CampaignState(given, clicked, self.probabilities(given, clicked), stages)

    def advance(
        self, state: CampaignState, users: Sequence[int], outcome: Sequence[bool]
    ) -> CampaignState:
        """State after ``users`` received impressions and clicked per ``outcome``."""
        if not users:
            return self.skip(state)
        given = state.given.copy()
        clicked = state.clicked.copy()
        given[list(users)] = True
        clicked[[u for u, c in zip(users, outcome) if c]] = True
        given.flags.writeable = False
        clicked.flags.writeable = False
        return CampaignState(
            given, clicked, self.probabilities(given, clicked), state.stages_remaining - 1
        )

    def skip(self, state: CampaignState) -> CampaignState:
        """State after a stage that placed no impressions."""
        return CampaignState(state.given, state.clicked, state.probs, state.stages_remaining - 1)


def expected_clicks(probs: np.ndarray, users: Sequence[int]) -> float:
    """Expected clicks of one stage's users, exactly rounded."""
    return math.fsum(float(probs[u]) for u in users)
