"""IMRO solver configuration."""

from __future__ import annotations

from typing import Literal

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Application settings loaded from environment variables."""

    model_config = SettingsConfigDict(
        env_prefix="IMRO_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
    )

    # Logging
    log_level: Literal["DEBUG", "INFO", "WARNING", "ERROR"] = Field(
        default="INFO",
        description="Logging level",
    )

    # Influence model defaults
    p0: float = Field(default=0.25, ge=0, le=1, description="Base click probability")
    alpha: float = Field(default=0.25, ge=0, description="Positive influence constant")
    beta: float = Field(default=0.25, ge=0, description="Negative influence constant")

    # Exact solver guards
    expansion_cap: int = Field(
        default=10**8, ge=1, description="Max subset x outcome expansions per stage"
    )
    max_outcome_users: int = Field(
        default=20, ge=1, le=30, description="Max users whose outcomes are enumerated at once"
    )

    # Heuristic defaults
    iterations: int = Field(default=50, ge=1, description="Heuristic iterations")
    swarm_size: int = Field(default=10, ge=1, description="MPSO swarm size")
    c1r1: float = Field(default=0.5, ge=0, le=1, description="MPSO personal-best weight")
    c2r2: float = Field(default=0.5, ge=0, le=1, description="MPSO global-best weight")

    # Experiments
    edge_probability: float = Field(
        default=0.6, ge=0, le=1, description="Synthetic graph edge probability"
    )
    record_timing: bool = Field(
        default=True, description="Write wall-clock times into result files"
    )
    jobs: int = Field(default=1, ge=1, description="Worker processes for the exact solver")


# Global settings instance
settings = Settings()
