"""Experiment execution: graph setup, solver dispatch and timing."""

from __future__ import annotations

import math
import statistics
import time
from dataclasses import dataclass, field
from typing import TYPE_CHECKING

import numpy as np
import structlog

from imro.config import settings
from imro.exceptions import ParameterError
from imro.graph.generators import edge_probability_for_degree, generate_synthetic
from imro.graph.io import read_edge_list
from imro.heuristics.ahc import ahc_solve
from imro.heuristics.ldh import ldh_solve
from imro.heuristics.mpso import mpso_solve
from imro.models import (
    SEED_LIMIT,
    ExperimentConfig,
    ResultRecord,
    SDPOptions,
    Solution,
    SolverMethod,
    SweepParameter,
    SyntheticSpec,
)
from imro.sdp.engine import solve_sdp

if TYPE_CHECKING:
    from collections.abc import Sequence

    from imro.graph.core import Graph

logger = structlog.get_logger()


def load_graph(config: ExperimentConfig) -> Graph:
    """Read or generate the graph named by ``config``."""
    if config.graph_path is not None:
        graph, report = read_edge_list(config.graph_path, compact=config.compact)
        logger.info(
            "graph_loaded",
            path=str(config.graph_path),
            nodes=graph.node_count,
            edges=graph.edge_count,
            duplicates_dropped=report.duplicates_dropped,
            self_loops_dropped=report.self_loops_dropped,
        )
        return graph
    assert config.synthetic is not None
    spec = config.synthetic
    return generate_synthetic(spec.n, spec.edge_probability, spec.seed)


def solve(graph: Graph, config: ExperimentConfig, seed: int | None = None) -> Solution:
    """Dispatch ``config.method`` on ``graph``."""
    seed = config.seed if seed is None else seed
    args = (graph, config.params, config.model, config.impressions, config.stages)
    if config.method is SolverMethod.SDP:
        options = SDPOptions(
            allow_partial=config.allow_partial,
            expansion_cap=config.expansion_cap,
            max_outcome_users=settings.max_outcome_users,
            jobs=config.jobs,
        )
        return solve_sdp(*args, options=options)
    if config.method is SolverMethod.LDH:
        return ldh_solve(*args, expansion_cap=config.expansion_cap)
    if config.method is SolverMethod.AHC:
        return ahc_solve(*args, config.heuristic_config(seed), expansion_cap=config.expansion_cap)
    return mpso_solve(*args, config.heuristic_config(seed), expansion_cap=config.expansion_cap)


def _ms(seconds: float) -> float:
    return seconds * 1000.0 if settings.record_timing else 0.0


def run_on_graph(graph: Graph, config: ExperimentConfig, setup_ms: float = 0.0) -> ResultRecord:
    """Solve ``config`` on an already built graph.

    Repeat ``r`` uses seed ``config.seed + r``; the reported allocation and
    users are those of the first repeat, the time is the mean over repeats.
    """
    solutions = [
        solve(graph, config, (config.seed + r) % SEED_LIMIT) for r in range(config.repeat)
    ]
    first = solutions[0]
    values = [s.expected_clicks for s in solutions]
    return ResultRecord(
        method=config.method,
        model=config.model,
        node_count=graph.node_count,
        impressions=config.impressions,
        stages=config.stages,
        p0=config.params.p0,
        alpha=config.params.alpha,
        beta=config.params.beta,
        seed=config.seed,
        iterations=config.iterations,
        swarm_size=config.swarm_size,
        c1r1=config.c1r1,
        c2r2=config.c2r2,
        allow_partial=config.allow_partial,
        expansion_cap=config.expansion_cap,
        allocation=list(first.allocation),
        users=list(first.first_stage_users),
        expected_clicks=first.expected_clicks,
        time_ms=_ms(statistics.fmean(s.elapsed_seconds for s in solutions)),
        setup_ms=setup_ms,
        repeat_values=values if config.repeat > 1 else [],
        mean_clicks=statistics.fmean(values),
    )


def _setup(config: ExperimentConfig) -> tuple[Graph, float]:
    start = time.perf_counter()
    graph = load_graph(config)
    return graph, _ms(time.perf_counter() - start)


def run(config: ExperimentConfig) -> ResultRecord:
    """Build the graph, solve, and time the solve alone."""
    graph, setup_ms = _setup(config)
    record = run_on_graph(graph, config, setup_ms)
    logger.info(
        "experiment_finished",
        method=record.method.value,
        expected_clicks=record.expected_clicks,
        time_ms=record.time_ms,
    )
    return record


def compare(config: ExperimentConfig, methods: Sequence[SolverMethod]) -> list[ResultRecord]:
    """Run several methods on one shared graph."""
    graph, setup_ms = _setup(config)
    return [
        run_on_graph(graph, config.model_copy(update={"method": method}), setup_ms)
        for method in methods
    ]


def _with_parameter(
    config: ExperimentConfig, parameter: SweepParameter, value: float
) -> ExperimentConfig:
    data = config.model_dump()
    if parameter is SweepParameter.ALPHA:
        data["params"]["alpha"] = value
    elif float(value).is_integer():
        data[parameter.value] = int(value)
    else:
        raise ParameterError(f"{parameter.value} takes whole numbers, got {value}")
    return ExperimentConfig.model_validate(data)


def sweep(
    config: ExperimentConfig, parameter: SweepParameter, values: Sequence[float]
) -> list[ResultRecord]:
    """Run ``config.method`` once per value of ``parameter`` on one shared graph.

    Covers the alpha sensitivity runs and the AHC and MPSO iteration and
    swarm-size tables. Each record echoes the value it was run with.
    """
    configs = [_with_parameter(config, parameter, value) for value in values]
    graph, setup_ms = _setup(config)
    records = []
    for swept, value in zip(configs, values):
        record = run_on_graph(graph, swept, setup_ms)
        logger.info(
            "sweep_point",
            parameter=parameter.value,
            value=value,
            expected_clicks=record.expected_clicks,
        )
        records.append(record)
    return records


def sweep_alpha(config: ExperimentConfig, alphas: Sequence[float]) -> list[ResultRecord]:
    """Run ``config.method`` for each influence constant alpha on one graph."""
    return sweep(config, SweepParameter.ALPHA, alphas)


@dataclass
class BenchRow:
    """Timing of one method on one graph size."""

    n: int
    method: SolverMethod
    time_ms: float


@dataclass
class BenchReport:
    """Timings over graph sizes and the log-log slope per method."""

    rows: list[BenchRow] = field(default_factory=list)
    slopes: dict[SolverMethod, float] = field(default_factory=dict)


def loglog_slope(sizes: Sequence[int], times_ms: Sequence[float]) -> float:
    """Least-squares slope of log(time) against log(n); NaN when undefined."""
    points = [(n, t) for n, t in zip(sizes, times_ms) if n > 0 and t > 0]
    if len(points) < 2 or len({n for n, _ in points}) < 2:
        return math.nan
    x = np.log([n for n, _ in points])
    y = np.log([t for _, t in points])
    slope, _ = np.polyfit(x, y, 1)
    return float(slope)


def bench(
    sizes: Sequence[int],
    methods: Sequence[SolverMethod],
    config: ExperimentConfig,
    edge_probability: float | None = None,
    average_degree: float | None = None,
) -> BenchReport:
    """Time each method on seeded synthetic graphs of each size.

    One graph is drawn per size (seed ``config.seed``) and shared by all
    methods. Density comes from ``average_degree`` when given, else from
    ``edge_probability``.
    """
    report = BenchReport()
    for n in sizes:
        p = (
            edge_probability_for_degree(n, average_degree)
            if average_degree is not None
            else (settings.edge_probability if edge_probability is None else edge_probability)
        )
        spec = SyntheticSpec(n=n, edge_probability=p, seed=config.seed)
        graph = generate_synthetic(spec.n, spec.edge_probability, spec.seed)
        for method in methods:
            sized = config.model_copy(
                update={"method": method, "synthetic": spec, "graph_path": None, "repeat": 1}
            )
            solution = solve(graph, sized)
            row = BenchRow(n=n, method=method, time_ms=_ms(solution.elapsed_seconds))
            report.rows.append(row)
            logger.info("bench_row", n=n, method=method.value, time_ms=row.time_ms)

    for method in methods:
        rows = [row for row in report.rows if row.method is method]
        report.slopes[method] = loglog_slope([r.n for r in rows], [r.time_ms for r in rows])
    return report
