"""Exact solver against an independently written adaptive enumerator."""

from __future__ import annotations

import itertools
import math
from collections.abc import Iterator

import networkx as nx
import pytest

from imro.graph import Graph
from imro.models import InfluenceParams, ModelKind
from imro.sdp import solve_sdp

P0 = ALPHA = BETA = 0.25


def naive_probability(
    adjacency: list[list[int]], user: int, given: frozenset[int], clicked: frozenset[int], nim: bool
) -> float:
    friends = adjacency[user]
    f = len(friends)
    if f == 0:
        return P0
    y = sum(1 for j in friends if j in clicked)
    n = sum(1 for j in friends if j in given and j not in clicked)
    if nim:
        raw = P0 + ALPHA * y / f - BETA * n / f
    else:
        raw = P0 + (1.0 - (1.0 - ALPHA * y / f) ** f)
    return min(1.0, max(0.0, raw))


def naive_value(
    adjacency: list[list[int]],
    stages: tuple[int, ...],
    given: frozenset[int],
    clicked: frozenset[int],
    nim: bool,
) -> float:
    """Best expected clicks, re-choosing every stage's users per outcome."""
    if not stages:
        return 0.0
    ungiven = [i for i in range(len(adjacency)) if i not in given]
    size = min(stages[0], len(ungiven))
    best = 0.0
    for users in itertools.combinations(ungiven, size):
        probs = [naive_probability(adjacency, u, given, clicked, nim) for u in users]
        total = 0.0
        for outcome in itertools.product((1, 0), repeat=size):
            weight = 1.0
            for p, o in zip(probs, outcome):
                weight *= p if o else 1.0 - p
            now_clicked = clicked | {u for u, o in zip(users, outcome) if o}
            future = naive_value(adjacency, stages[1:], given | set(users), now_clicked, nim)
            total += weight * (sum(outcome) + future)
        best = max(best, total)
    return best


def naive_optimum(adjacency: list[list[int]], impressions: int, stages: int, nim: bool) -> float:
    splits = [
        split
        for split in itertools.product(range(impressions + 1), repeat=stages)
        if sum(split) == impressions
    ]
    return max(
        naive_value(adjacency, split, frozenset(), frozenset(), nim) for split in splits
    )


def small_graphs() -> Iterator[nx.Graph]:
    """Connected graphs on up to five nodes, then fifty random six-node graphs."""
    for g in nx.graph_atlas_g():
        if 1 <= g.number_of_nodes() <= 5 and nx.is_connected(g):
            yield g
    for seed in range(50):
        yield nx.gnp_random_graph(6, 0.5, seed=seed)


def to_graph(g: nx.Graph) -> Graph:
    return Graph.from_edges(g.number_of_nodes(), g.edges())


def test_atlas_size() -> None:
    """Test the connected atlas graphs on up to five nodes are all present."""
    atlas = [g for g in small_graphs() if g.number_of_nodes() <= 5]
    assert len(atlas) == 1 + 1 + 2 + 6 + 21


def test_naive_pair_example() -> None:
    """Test the naive enumerator on the two-node instance."""
    assert naive_optimum([[1], [0]], 2, 2, nim=False) == pytest.approx(0.5625)
    assert naive_optimum([[1], [0]], 2, 2, nim=True) == pytest.approx(0.5)


@pytest.mark.slow
@pytest.mark.parametrize("model", list(ModelKind))
def test_solve_sdp_matches_naive(model: ModelKind) -> None:
    """Test the exact solver on every small instance."""
    params = InfluenceParams(p0=P0, alpha=ALPHA, beta=BETA)
    for g in small_graphs():
        graph = to_graph(g)
        adjacency = [graph.neighbors(i).tolist() for i in range(graph.node_count)]
        for impressions, stages in itertools.product((2, 3), (1, 2)):
            if impressions > graph.node_count:
                continue
            expected = naive_optimum(adjacency, impressions, stages, model is ModelKind.NIM)
            solution = solve_sdp(graph, params, model, impressions, stages)
            assert math.isclose(solution.expected_clicks, expected, abs_tol=1e-9), (
                list(g.edges()),
                impressions,
                stages,
            )
