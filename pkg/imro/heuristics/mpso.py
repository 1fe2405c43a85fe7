"""Multistage discrete particle swarm over full stage assignments."""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np
import structlog

from imro.exceptions import ParameterError
from imro.heuristics.swap import Position, SwapSequence, apply_sequence, subtract_solutions
from imro.models import HeuristicConfig, InfluenceParams, ModelKind, Solution, SolverMethod
from imro.sdp.allocations import Allocation, enumerate_allocations
from imro.sdp.evaluators import FixedAssignmentEvaluator
from imro.sdp.state import StateSpace

if TYPE_CHECKING:
    from imro.graph.core import Graph

logger = structlog.get_logger()


@dataclass
class Particle:
    """Current assignment, velocity and personal best of one particle."""

    position: Position
    velocity: SwapSequence
    pbest: Position
    pbest_value: float


def _split(users: list[int], allocation: Allocation) -> Position:
    stages = []
    start = 0
    for count in allocation:
        stages.append(tuple(users[start : start + count]))
        start += count
    return tuple(stages)


def _scaled(sequence: SwapSequence, rate: float, rng: np.random.Generator) -> SwapSequence:
    """Keep each operator independently with probability ``rate``."""
    if not len(sequence):
        return SwapSequence()
    keep = rng.random(len(sequence)) < rate
    return SwapSequence(tuple(op for op, kept in zip(sequence, keep) if kept))


def mpso_solve(
    graph: Graph,
    params: InfluenceParams,
    model: ModelKind,
    impressions: int,
    stages: int,
    config: HeuristicConfig | None = None,
    expansion_cap: int = 10**8,
) -> Solution:
    """Search fixed assignments with a swap-sequence particle swarm.

    Fitness is the non-adaptive expected clicks of a particle's assignment.
    Velocities keep the previous operators plus a random share of the moves
    toward the personal and global bests, capped to the newest
    ``velocity_cap`` (default ``impressions``) operators.
    """
    config = config or HeuristicConfig()
    n = graph.node_count
    if impressions < 1 or stages < 1:
        raise ParameterError(f"need M >= 1 and K >= 1, got M={impressions}, K={stages}")
    if impressions > n:
        raise ParameterError(f"MPSO needs M <= N, got M={impressions}, N={n}")
    velocity_cap = impressions if config.velocity_cap is None else config.velocity_cap

    start = time.perf_counter()
    rng = np.random.default_rng(config.seed)
    allocations = enumerate_allocations(impressions, stages)
    fitness = FixedAssignmentEvaluator(StateSpace(graph, params, model), expansion_cap)

    swarm = []
    for _ in range(config.swarm_size):
        allocation = allocations[int(rng.integers(len(allocations)))]
        users = rng.choice(n, size=impressions, replace=False).tolist()
        position = _split(users, allocation)
        swarm.append(Particle(position, SwapSequence(), position, fitness(position)))

    best = max(range(len(swarm)), key=lambda i: (swarm[i].pbest_value, -i))
    gbest, gbest_value = swarm[best].pbest, swarm[best].pbest_value

    skipped_total = 0
    for iteration in range(config.iterations):
        for particle in swarm:
            toward_pbest = subtract_solutions(particle.pbest, particle.position)
            toward_gbest = subtract_solutions(gbest, particle.position)
            velocity = (
                particle.velocity
                + _scaled(toward_pbest, config.c1r1, rng)
                + _scaled(toward_gbest, config.c2r2, rng)
            ).newest(velocity_cap)
            position, skipped = apply_sequence(
                particle.position, velocity, budget=impressions, node_count=n
            )
            skipped_total += skipped
            particle.velocity = velocity
            particle.position = position
            value = fitness(position)
            if value > particle.pbest_value:
                particle.pbest, particle.pbest_value = position, value

        for particle in swarm:
            if particle.pbest_value > gbest_value:
                gbest, gbest_value = particle.pbest, particle.pbest_value
        logger.debug("mpso_iteration", iteration=iteration, gbest_value=gbest_value)
    elapsed = time.perf_counter() - start

    logger.info(
        "mpso_solved",
        swarm_size=config.swarm_size,
        iterations=config.iterations,
        seed=config.seed,
        evaluations=fitness.evaluations,
        skipped_ops=skipped_total,
        expected_clicks=gbest_value,
    )
    return Solution(
        allocation=tuple(len(stage) for stage in gbest),
        first_stage_users=gbest[0],
        expected_clicks=gbest_value,
        elapsed_seconds=elapsed,
        method=SolverMethod.MPSO,
        assignment=gbest,
    )
