"""Tests for the multistage particle swarm."""

from __future__ import annotations

import itertools

import networkx as nx
import numpy as np
import pytest

from imro.exceptions import BudgetExceededError, ParameterError
from imro.graph import Graph, generate_synthetic
from imro.heuristics import ahc_solve, ldh_solve, mpso_solve
from imro.models import HeuristicConfig, InfluenceParams, ModelKind, SolverMethod
from imro.sdp import (
    FixedAssignmentEvaluator,
    StateSpace,
    enumerate_allocations,
    evaluate_fixed_assignment,
    solve_sdp,
)


def best_fixed_assignment(
    graph: Graph, params: InfluenceParams, model: ModelKind, impressions: int, stages: int
) -> float:
    """Exhaustive optimum over non-adaptive assignments."""
    evaluator = FixedAssignmentEvaluator(StateSpace(graph, params, model))
    best = 0.0
    for allocation in enumerate_allocations(impressions, stages):
        for users in itertools.permutations(range(graph.node_count), impressions):
            stages_users, start = [], 0
            for count in allocation:
                stages_users.append(tuple(sorted(users[start : start + count])))
                start += count
            best = max(best, evaluator(stages_users))
    return best


def test_frozen_swarm(star_graph: Graph, params: InfluenceParams) -> None:
    """Test zero inclusion rates leave the single particle where it started."""
    config = HeuristicConfig(swarm_size=1, iterations=20, c1r1=0.0, c2r2=0.0, seed=3)
    solution = mpso_solve(star_graph, params, ModelKind.GIM, 3, 2, config)

    rng = np.random.default_rng(3)
    allocations = enumerate_allocations(3, 2)
    allocation = allocations[int(rng.integers(len(allocations)))]
    users = rng.choice(5, size=3, replace=False).tolist()
    expected = (tuple(users[: allocation[0]]), tuple(users[allocation[0] :]))

    assert solution.assignment == expected
    assert solution.allocation == allocation
    assert solution.first_stage_users == expected[0]
    assert solution.expected_clicks == evaluate_fixed_assignment(
        star_graph, params, ModelKind.GIM, expected
    )
    assert solution.method is SolverMethod.MPSO


def test_gbest_non_decreasing(params: InfluenceParams) -> None:
    """Test longer runs with the same seed never end worse."""
    graph = generate_synthetic(8, 0.4, seed=6)
    values = [
        mpso_solve(
            graph, params, ModelKind.NIM, 3, 2, HeuristicConfig(iterations=t, swarm_size=4, seed=2)
        ).expected_clicks
        for t in (1, 2, 5, 10, 20)
    ]
    assert values == sorted(values)


def test_deterministic(params: InfluenceParams) -> None:
    """Test a fixed seed reproduces the swarm."""
    graph = generate_synthetic(8, 0.4, seed=6)
    config = HeuristicConfig(iterations=10, swarm_size=5, seed=77)
    a = mpso_solve(graph, params, ModelKind.GIM, 3, 3, config)
    b = mpso_solve(graph, params, ModelKind.GIM, 3, 3, config)
    assert a.assignment == b.assignment
    assert a.expected_clicks == b.expected_clicks


def test_assignment_is_valid(params: InfluenceParams) -> None:
    """Test the returned assignment is consistent with its value."""
    graph = generate_synthetic(10, 0.3, seed=4)
    solution = mpso_solve(
        graph, params, ModelKind.GIM, 4, 3, HeuristicConfig(iterations=15, seed=8)
    )
    assert solution.assignment is not None
    flat = [u for stage in solution.assignment for u in stage]
    assert len(flat) == len(set(flat))
    assert len(flat) <= 4
    assert solution.allocation == tuple(len(stage) for stage in solution.assignment)
    assert solution.expected_clicks == evaluate_fixed_assignment(
        graph, params, ModelKind.GIM, solution.assignment
    )


def test_rejects_budget_above_n(pair_graph: Graph, params: InfluenceParams) -> None:
    """Test M <= N is required."""
    with pytest.raises(ParameterError):
        mpso_solve(pair_graph, params, ModelKind.GIM, 3, 2)


def test_expansion_cap(params: InfluenceParams) -> None:
    """Test fitness evaluations respect the cap."""
    graph = generate_synthetic(10, 0.3, seed=4)
    with pytest.raises(BudgetExceededError):
        mpso_solve(graph, params, ModelKind.GIM, 4, 2, HeuristicConfig(seed=1), expansion_cap=8)


def test_seed_sweep_reaches_optimum(complete5: Graph, params: InfluenceParams) -> None:
    """Test most seeds find the exhaustive non-adaptive optimum."""
    optimum = best_fixed_assignment(complete5, params, ModelKind.GIM, 2, 2)
    hits = 0
    for seed in range(20):
        config = HeuristicConfig(swarm_size=10, iterations=50, seed=seed)
        value = mpso_solve(complete5, params, ModelKind.GIM, 2, 2, config).expected_clicks
        assert value <= optimum + 1e-12
        hits += value >= optimum - 1e-12
    assert hits >= 16


@pytest.mark.slow
@pytest.mark.parametrize("model", list(ModelKind))
def test_heuristics_bounded_by_sdp(model: ModelKind, params: InfluenceParams) -> None:
    """Test every heuristic stays between 0 and the exact optimum."""
    atlas = [
        g for g in nx.graph_atlas_g() if 3 <= g.number_of_nodes() <= 5 and nx.is_connected(g)
    ]
    for g in atlas:
        graph = Graph.from_edges(g.number_of_nodes(), g.edges())
        n = graph.node_count
        for impressions in (2, 3):
            if impressions > n:
                continue
            for stages in (1, 2):
                optimum = solve_sdp(graph, params, model, impressions, stages).expected_clicks
                swarm = max(
                    mpso_solve(
                        graph,
                        params,
                        model,
                        impressions,
                        stages,
                        HeuristicConfig(swarm_size=10, iterations=50, seed=seed),
                    ).expected_clicks
                    for seed in range(5)
                )
                assert 0.0 <= swarm <= optimum + 1e-12
                if stages == 1:
                    continue
                ldh = ldh_solve(graph, params, model, impressions, stages).expected_clicks
                ahc = ahc_solve(
                    graph, params, model, impressions, stages, HeuristicConfig(iterations=n)
                ).expected_clicks
                assert 0.0 <= ldh <= optimum + 1e-12
                assert 0.0 <= ahc <= optimum + 1e-12
                assert ahc >= ldh
