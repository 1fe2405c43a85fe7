"""Pydantic models for the IMRO solvers."""

from __future__ import annotations

from enum import Enum
from pathlib import Path

from pydantic import BaseModel, ConfigDict, Field, model_validator

SEED_LIMIT = 2**64


class ModelKind(str, Enum):
    """Influence model used to update click probabilities between stages."""

    GIM = "gim"
    NIM = "nim"


class SolverMethod(str, Enum):
    """Solver that produced a solution."""

    SDP = "sdp"
    LDH = "ldh"
    AHC = "ahc"
    MPSO = "mpso"


class SweepParameter(str, Enum):
    """Experiment setting varied by a parameter sweep."""

    ALPHA = "alpha"
    ITERATIONS = "iterations"
    SWARM_SIZE = "swarm_size"


class InfluenceParams(BaseModel):
    """Base click probability and influence constants."""

    model_config = ConfigDict(frozen=True)

    p0: float = Field(default=0.25, ge=0, le=1, description="Base click probability")
    alpha: float = Field(default=0.25, ge=0, description="Influence of clicking friends")
    beta: float = Field(
        default=0.25, ge=0, description="Influence of friends who ignored the ad (NIM only)"
    )


class HeuristicConfig(BaseModel):
    """Search settings shared by AHC and MPSO."""

    model_config = ConfigDict(frozen=True)

    iterations: int = Field(default=50, ge=1)
    swarm_size: int = Field(default=10, ge=1)
    c1r1: float = Field(default=0.5, ge=0, le=1, description="Personal-best inclusion rate")
    c2r2: float = Field(default=0.5, ge=0, le=1, description="Global-best inclusion rate")
    seed: int = Field(default=0, ge=0, lt=SEED_LIMIT)
    velocity_cap: int | None = Field(
        default=None, ge=0, description="Max swap ops kept in a velocity; None means M"
    )


class SDPOptions(BaseModel):
    """Search-space and budget settings of the exact solver."""

    model_config = ConfigDict(frozen=True)

    allow_partial: bool = Field(
        default=False, description="Also consider allocations spending fewer than M"
    )
    expansion_cap: int = Field(default=10**8, ge=1)
    max_outcome_users: int = Field(default=20, ge=1, le=30)
    jobs: int = Field(default=1, ge=1)


class Solution(BaseModel):
    """Allocation, first-stage users and objective value of one solve."""

    allocation: tuple[int, ...]
    first_stage_users: tuple[int, ...]
    expected_clicks: float
    elapsed_seconds: float = 0.0
    method: SolverMethod
    assignment: tuple[tuple[int, ...], ...] | None = Field(
        default=None, description="Users of every stage when fixed up front"
    )


class SyntheticSpec(BaseModel):
    """Seeded Erdos-Renyi graph description."""

    model_config = ConfigDict(frozen=True)

    n: int = Field(ge=0)
    edge_probability: float = Field(default=0.6, ge=0, le=1)
    seed: int = Field(ge=0, lt=SEED_LIMIT)

    @classmethod
    def parse(cls, text: str) -> SyntheticSpec:
        """Parse the `N,P,SEED` form used on the command line."""
        parts = [part.strip() for part in text.split(",")]
        if len(parts) != 3:
            raise ValueError(f"expected N,P,SEED, got {text!r}")
        return cls(n=int(parts[0]), edge_probability=float(parts[1]), seed=int(parts[2]))


class ExperimentConfig(BaseModel):
    """One experiment: a graph source, a model, a budget and a method."""

    graph_path: Path | None = None
    synthetic: SyntheticSpec | None = None
    compact: bool = False
    model: ModelKind = ModelKind.GIM
    params: InfluenceParams = Field(default_factory=InfluenceParams)
    impressions: int = Field(ge=1, description="Impression budget M")
    stages: int = Field(ge=1, description="Stage count K")
    method: SolverMethod = SolverMethod.SDP
    iterations: int = Field(default=50, ge=1)
    swarm_size: int = Field(default=10, ge=1)
    c1r1: float = Field(default=0.5, ge=0, le=1)
    c2r2: float = Field(default=0.5, ge=0, le=1)
    seed: int = Field(default=0, ge=0, lt=SEED_LIMIT)
    allow_partial: bool = False
    expansion_cap: int = Field(default=10**8, ge=1)
    repeat: int = Field(default=1, ge=1)
    jobs: int = Field(default=1, ge=1)

    @model_validator(mode="after")
    def _one_graph_source(self) -> ExperimentConfig:
        if (self.graph_path is None) == (self.synthetic is None):
            raise ValueError("exactly one of graph_path or synthetic must be set")
        return self

    def heuristic_config(self, seed: int) -> HeuristicConfig:
        """Build the heuristic settings for one repeat."""
        return HeuristicConfig(
            iterations=self.iterations,
            swarm_size=self.swarm_size,
            c1r1=self.c1r1,
            c2r2=self.c2r2,
            seed=seed % SEED_LIMIT,
        )


class ResultRecord(BaseModel):
    """One row of a result table."""

    method: SolverMethod
    model: ModelKind
    node_count: int
    impressions: int
    stages: int
    p0: float
    alpha: float
    beta: float
    seed: int
    iterations: int
    swarm_size: int
    c1r1: float
    c2r2: float
    allow_partial: bool
    expansion_cap: int
    allocation: list[int]
    users: list[int]
    expected_clicks: float
    time_ms: float
    setup_ms: float
    repeat_values: list[float] = Field(default_factory=list)
    mean_clicks: float
