"""
Configuration management using Pydantic Settings.
"""

from typing import Dict, Optional
from pydantic import AliasChoices, BaseModel, ConfigDict, Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict


class Tolerances(BaseModel):
    """Numerical thresholds shared by every module."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    surface_tol: float = Field(1e-10, gt=0, description="max |g(r)| after projection")
    grad_tol: float = Field(1e-12, gt=0, description="smallest admissible gradient norm")
    report_tol: float = Field(1e-8, gt=0, description="cross-route curvature agreement")
    critical_tol: float = Field(1e-6, gt=0, description="rigidity residual at critical points")
    constancy_tol: float = Field(1e-6, gt=0, description="relative spread of a constant h(T,T)")
    radius_tol: float = Field(1e-6, gt=0, description="sphere radius consistency")
    torus_tol: float = Field(1e-12, gt=0, description="closed-form torus confinement")
    tangent_tol: float = Field(1e-10, gt=0, description="tangency check for h(V, W)")
    lemma_tol: float = Field(1e-12, gt=0, description="|<p, T_p>| bound")
    parallel_tol: float = Field(1e-8, gt=0, description="|p + |p| N| at critical points")
    dedup_tol: float = Field(1e-8, gt=0, description="radii distance merging critical points")

    def with_overrides(self, overrides: Dict[str, float]) -> "Tolerances":
        """Return a copy with some thresholds replaced; unknown keys are rejected."""
        return Tolerances.model_validate({**self.model_dump(), **overrides})


class Settings(BaseSettings):
    """Application settings loaded from environment variables."""

    model_config = SettingsConfigDict(
        env_prefix="REINHARDT_",
        env_file=".env",
        env_nested_delimiter="__",
        case_sensitive=False,
        extra="ignore",
        populate_by_name=True,
    )

    log_level: str = Field("INFO", validation_alias=AliasChoices("REINHARDT_LOG", "log_level"))
    log_file: Optional[str] = Field(None)

    tolerances: Tolerances = Field(default_factory=Tolerances)

    h_fd: float = Field(1e-5, gt=0)
    max_iter: int = Field(50, gt=0)
    max_samples: int = Field(100_000, gt=0)
    multistart: int = Field(20, gt=0)
    seed: int = Field(42)
    search_radius: Optional[float] = Field(None, gt=0, description="fixed search box; sized from the profile when unset")
    max_search_radius: float = Field(1e3, gt=0)
    grid_points: int = Field(11, ge=3)
    workers: int = Field(4, ge=1)

    @field_validator("log_level")
    @classmethod
    def _normalize_level(cls, value: str) -> str:
        level = value.strip().upper()
        if level not in {"TRACE", "DEBUG", "INFO", "SUCCESS", "WARNING", "ERROR", "CRITICAL"}:
            raise ValueError(f"Unknown log level: {value}")
        return level


settings = Settings()
