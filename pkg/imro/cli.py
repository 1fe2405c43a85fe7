"""CLI entry points for the IMRO solvers."""

from __future__ import annotations

import sys
from collections.abc import Callable, Iterator
from contextlib import contextmanager
from pathlib import Path
from typing import TypeVar

import structlog
import typer
from pydantic import ValidationError

from imro.config import settings
from imro.exceptions import IMROError, ParameterError
from imro.experiment import runner
from imro.experiment.emit import OutputFormat, emit, emit_bench, emit_records, format_slopes
from imro.graph import generate_synthetic, write_edge_list
from imro.models import (
    ExperimentConfig,
    InfluenceParams,
    ModelKind,
    SolverMethod,
    SweepParameter,
    SyntheticSpec,
)

app = typer.Typer(name="imro", help="IMRO - multistage ad impression allocation solvers")

T = TypeVar("T")

LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR")
DEFAULT_ALPHAS = "0,0.25,0.5,0.75,1"

GRAPH = typer.Option(None, "--graph", "-g", help="Edge-list file with one u,v pair per line")
SYNTHETIC = typer.Option(None, "--synthetic", "-s", help="Seeded random graph as N,P,SEED")
COMPACT = typer.Option(False, "--compact", help="Renumber edge-list node ids densely")
MODEL = typer.Option(ModelKind.GIM, "--model", case_sensitive=False, help="Influence model")
P0 = typer.Option(None, "--p0", help="Base click probability")
ALPHA = typer.Option(None, "--alpha", help="Positive influence constant")
BETA = typer.Option(None, "--beta", help="Negative influence constant (NIM)")
IMPRESSIONS = typer.Option(..., "--impressions", "-M", help="Impression budget")
STAGES = typer.Option(..., "--stages", "-K", help="Number of stages")
METHOD = typer.Option(SolverMethod.SDP, "--method", case_sensitive=False, help="Solver")
ITERATIONS = typer.Option(None, "--iterations", help="Heuristic iterations")
SWARM_SIZE = typer.Option(None, "--swarm-size", help="MPSO swarm size")
C1R1 = typer.Option(None, "--c1r1", help="MPSO personal-best inclusion rate")
C2R2 = typer.Option(None, "--c2r2", help="MPSO global-best inclusion rate")
SEED = typer.Option(0, "--seed", help="Seed of heuristic randomness")
ALLOW_PARTIAL = typer.Option(
    False, "--allow-partial", help="Let the exact solver spend fewer than M impressions"
)
EXPANSION_CAP = typer.Option(None, "--expansion-cap", help="Max exact-solver expansions")
REPEAT = typer.Option(1, "--repeat", help="Runs per experiment, seeds seed..seed+repeat-1")
FORMAT = typer.Option(OutputFormat.JSON, "--format", case_sensitive=False, help="Output format")
OUT = typer.Option(None, "--out", "-o", help="Write results to FILE instead of stdout")
JOBS = typer.Option(None, "--jobs", "-j", help="Worker processes for the exact solver")
TIMING = typer.Option(None, "--timing/--no-timing", help="Record wall-clock times")
LOG_LEVEL = typer.Option(None, "--log-level", help="Log level")


@contextmanager
def _exit_codes() -> Iterator[None]:
    try:
        yield
    except IMROError as e:
        typer.echo(f"Error: {e.message}", err=True)
        raise typer.Exit(e.exit_code) from e
    except ValidationError as e:
        typer.echo(f"Error: {e}", err=True)
        raise typer.Exit(2) from e
    except OSError as e:
        typer.echo(f"Error: {e}", err=True)
        raise typer.Exit(4) from e


def _configure(log_level: str | None, timing: bool | None) -> None:
    if log_level:
        level = log_level.upper()
        if level not in LOG_LEVELS:
            raise ParameterError(f"--log-level must be one of {', '.join(LOG_LEVELS)}")
        settings.log_level = level  # type: ignore[assignment]
    if timing is not None:
        settings.record_timing = timing
    structlog.configure(
        wrapper_class=structlog.make_filtering_bound_logger(settings.log_level),
        logger_factory=structlog.PrintLoggerFactory(file=sys.stderr),
    )


def _or(value: T | None, default: T) -> T:
    return default if value is None else value


def _split(text: str, parse: Callable[[str], T], flag: str) -> list[T]:
    try:
        values = [parse(part.strip()) for part in text.split(",") if part.strip()]
    except ValueError as e:
        raise ParameterError(f"{flag}: cannot parse {text!r}") from e
    if not values:
        raise ParameterError(f"{flag} needs at least one value")
    return values


def _synthetic(text: str | None) -> SyntheticSpec | None:
    if text is None:
        return None
    try:
        return SyntheticSpec.parse(text)
    except ValueError as e:
        raise ParameterError(f"--synthetic expects N,P,SEED: {e}") from e


def _config(
    *,
    graph: Path | None,
    synthetic: str | None,
    compact: bool,
    model: ModelKind,
    p0: float | None,
    alpha: float | None,
    beta: float | None,
    impressions: int,
    stages: int,
    method: SolverMethod,
    iterations: int | None,
    swarm_size: int | None,
    c1r1: float | None,
    c2r2: float | None,
    seed: int,
    allow_partial: bool,
    expansion_cap: int | None,
    repeat: int,
    jobs: int | None,
) -> ExperimentConfig:
    return ExperimentConfig(
        graph_path=graph,
        synthetic=_synthetic(synthetic),
        compact=compact,
        model=model,
        params=InfluenceParams(
            p0=_or(p0, settings.p0),
            alpha=_or(alpha, settings.alpha),
            beta=_or(beta, settings.beta),
        ),
        impressions=impressions,
        stages=stages,
        method=method,
        iterations=_or(iterations, settings.iterations),
        swarm_size=_or(swarm_size, settings.swarm_size),
        c1r1=_or(c1r1, settings.c1r1),
        c2r2=_or(c2r2, settings.c2r2),
        seed=seed,
        allow_partial=allow_partial,
        expansion_cap=_or(expansion_cap, settings.expansion_cap),
        repeat=repeat,
        jobs=_or(jobs, settings.jobs),
    )


def _write(text: str, out: Path | None) -> None:
    if out is None:
        typer.echo(text, nl=False)
        return
    out.write_text(text, encoding="utf-8")


@app.command()
def run(
    graph: Path | None = GRAPH,
    synthetic: str | None = SYNTHETIC,
    compact: bool = COMPACT,
    model: ModelKind = MODEL,
    p0: float | None = P0,
    alpha: float | None = ALPHA,
    beta: float | None = BETA,
    impressions: int = IMPRESSIONS,
    stages: int = STAGES,
    method: SolverMethod = METHOD,
    iterations: int | None = ITERATIONS,
    swarm_size: int | None = SWARM_SIZE,
    c1r1: float | None = C1R1,
    c2r2: float | None = C2R2,
    seed: int = SEED,
    allow_partial: bool = ALLOW_PARTIAL,
    expansion_cap: int | None = EXPANSION_CAP,
    repeat: int = REPEAT,
    fmt: OutputFormat = FORMAT,
    out: Path | None = OUT,
    jobs: int | None = JOBS,
    timing: bool | None = TIMING,
    log_level: str | None = LOG_LEVEL,
) -> None:
    """Solve one instance and write its result record."""
    with _exit_codes():
        _configure(log_level, timing)
        config = _config(
            graph=graph,
            synthetic=synthetic,
            compact=compact,
            model=model,
            p0=p0,
            alpha=alpha,
            beta=beta,
            impressions=impressions,
            stages=stages,
            method=method,
            iterations=iterations,
            swarm_size=swarm_size,
            c1r1=c1r1,
            c2r2=c2r2,
            seed=seed,
            allow_partial=allow_partial,
            expansion_cap=expansion_cap,
            repeat=repeat,
            jobs=jobs,
        )
        _write(emit(runner.run(config), fmt), out)


@app.command()
def compare(
    methods: str = typer.Option("sdp,ldh,ahc,mpso", "--methods", help="Comma-separated solvers"),
    graph: Path | None = GRAPH,
    synthetic: str | None = SYNTHETIC,
    compact: bool = COMPACT,
    model: ModelKind = MODEL,
    p0: float | None = P0,
    alpha: float | None = ALPHA,
    beta: float | None = BETA,
    impressions: int = IMPRESSIONS,
    stages: int = STAGES,
    iterations: int | None = ITERATIONS,
    swarm_size: int | None = SWARM_SIZE,
    c1r1: float | None = C1R1,
    c2r2: float | None = C2R2,
    seed: int = SEED,
    allow_partial: bool = ALLOW_PARTIAL,
    expansion_cap: int | None = EXPANSION_CAP,
    repeat: int = REPEAT,
    fmt: OutputFormat = FORMAT,
    out: Path | None = OUT,
    jobs: int | None = JOBS,
    timing: bool | None = TIMING,
    log_level: str | None = LOG_LEVEL,
) -> None:
    """Run several solvers on one shared graph."""
    with _exit_codes():
        _configure(log_level, timing)
        chosen = _split(methods, lambda s: SolverMethod(s.lower()), "--methods")
        config = _config(
            graph=graph,
            synthetic=synthetic,
            compact=compact,
            model=model,
            p0=p0,
            alpha=alpha,
            beta=beta,
            impressions=impressions,
            stages=stages,
            method=chosen[0],
            iterations=iterations,
            swarm_size=swarm_size,
            c1r1=c1r1,
            c2r2=c2r2,
            seed=seed,
            allow_partial=allow_partial,
            expansion_cap=expansion_cap,
            repeat=repeat,
            jobs=jobs,
        )
        _write(emit_records(runner.compare(config, chosen), fmt), out)


@app.command()
def sweep(
    param: SweepParameter = typer.Option(
        SweepParameter.ALPHA, "--param", case_sensitive=False, help="Setting to vary"
    ),
    values: str | None = typer.Option(
        None, "--values", help="Comma-separated values; alpha defaults to 0,0.25,0.5,0.75,1"
    ),
    graph: Path | None = GRAPH,
    synthetic: str | None = SYNTHETIC,
    compact: bool = COMPACT,
    model: ModelKind = MODEL,
    p0: float | None = P0,
    alpha: float | None = ALPHA,
    beta: float | None = BETA,
    impressions: int = IMPRESSIONS,
    stages: int = STAGES,
    method: SolverMethod = METHOD,
    iterations: int | None = ITERATIONS,
    swarm_size: int | None = SWARM_SIZE,
    c1r1: float | None = C1R1,
    c2r2: float | None = C2R2,
    seed: int = SEED,
    allow_partial: bool = ALLOW_PARTIAL,
    expansion_cap: int | None = EXPANSION_CAP,
    repeat: int = REPEAT,
    fmt: OutputFormat = FORMAT,
    out: Path | None = OUT,
    jobs: int | None = JOBS,
    timing: bool | None = TIMING,
    log_level: str | None = LOG_LEVEL,
) -> None:
    """Run one solver across values of alpha, iterations or swarm size."""
    with _exit_codes():
        _configure(log_level, timing)
        if values is None:
            if param is not SweepParameter.ALPHA:
                raise ParameterError(f"--values is required when sweeping {param.value}")
            values = DEFAULT_ALPHAS
        points = _split(values, float, "--values")
        config = _config(
            graph=graph,
            synthetic=synthetic,
            compact=compact,
            model=model,
            p0=p0,
            alpha=alpha,
            beta=beta,
            impressions=impressions,
            stages=stages,
            method=method,
            iterations=iterations,
            swarm_size=swarm_size,
            c1r1=c1r1,
            c2r2=c2r2,
            seed=seed,
            allow_partial=allow_partial,
            expansion_cap=expansion_cap,
            repeat=repeat,
            jobs=jobs,
        )
        _write(emit_records(runner.sweep(config, param, points), fmt), out)


@app.command()
def bench(
    sizes: str = typer.Option(
        "250,500,1000,2000,4000", "--sizes", help="Comma-separated synthetic node counts"
    ),
    methods: str = typer.Option("ldh,ahc", "--methods", help="Comma-separated solvers"),
    edge_probability: float | None = typer.Option(
        None, "--edge-probability", "-p", help="Synthetic edge probability"
    ),
    avg_degree: float | None = typer.Option(
        None, "--avg-degree", help="Target average degree; overrides --edge-probability"
    ),
    model: ModelKind = MODEL,
    p0: float | None = P0,
    alpha: float | None = ALPHA,
    beta: float | None = BETA,
    impressions: int = IMPRESSIONS,
    stages: int = STAGES,
    iterations: int | None = ITERATIONS,
    swarm_size: int | None = SWARM_SIZE,
    c1r1: float | None = C1R1,
    c2r2: float | None = C2R2,
    seed: int = SEED,
    expansion_cap: int | None = EXPANSION_CAP,
    out: Path | None = OUT,
    jobs: int | None = JOBS,
    timing: bool | None = TIMING,
    log_level: str | None = LOG_LEVEL,
) -> None:
    """Time solvers on seeded synthetic graphs of growing size."""
    with _exit_codes():
        _configure(log_level, timing)
        ns = _split(sizes, int, "--sizes")
        chosen = _split(methods, lambda s: SolverMethod(s.lower()), "--methods")
        probability = _or(edge_probability, settings.edge_probability)
        config = _config(
            graph=None,
            synthetic=f"{ns[0]},{probability},{seed}",
            compact=False,
            model=model,
            p0=p0,
            alpha=alpha,
            beta=beta,
            impressions=impressions,
            stages=stages,
            method=chosen[0],
            iterations=iterations,
            swarm_size=swarm_size,
            c1r1=c1r1,
            c2r2=c2r2,
            seed=seed,
            allow_partial=False,
            expansion_cap=expansion_cap,
            repeat=1,
            jobs=jobs,
        )
        report = runner.bench(ns, chosen, config, probability, avg_degree)
        _write(emit_bench(report), out)
        typer.echo(format_slopes(report), err=True)


@app.command()
def generate(
    nodes: int = typer.Option(..., "--nodes", "-n", help="Number of nodes"),
    edge_probability: float | None = typer.Option(
        None, "--edge-probability", "-p", help="Edge probability"
    ),
    seed: int = typer.Option(0, "--seed", help="Generator seed"),
    out: Path | None = OUT,
    log_level: str | None = LOG_LEVEL,
) -> None:
    """Write a seeded synthetic graph as an edge list."""
    with _exit_codes():
        _configure(log_level, None)
        spec = SyntheticSpec(
            n=nodes, edge_probability=_or(edge_probability, settings.edge_probability), seed=seed
        )
        graph = generate_synthetic(spec.n, spec.edge_probability, spec.seed)
        if out is None:
            write_edge_list(graph, sys.stdout)
            return
        with out.open("w", encoding="utf-8", newline="") as sink:
            write_edge_list(graph, sink)
        typer.echo(f"Wrote {graph.edge_count} edges over {graph.node_count} nodes to {out}")


if __name__ == "__main__":
    app()
