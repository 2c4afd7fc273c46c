"""
Validated run configuration of one command-line invocation.
"""

from pathlib import Path
from typing import Dict, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

from src.config.settings import settings

Command = Literal["curvature", "scan", "flow", "verify", "critical", "ode"]
OutputFormat = Literal["json", "csv", "svg"]
FlowMethod = Literal["closed_form", "rk4", "implicit_midpoint"]

DEFAULT_FORMATS: Dict[str, str] = {
    "curvature": "json",
    "scan": "csv",
    "flow": "csv",
    "verify": "json",
    "critical": "json",
    "ode": "csv",
}


class RunConfig(BaseModel):
    """Every option of a run; echoed into the header of each output file."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    command: Command
    profile_path: Optional[Path] = None
    seed: int = Field(default_factory=lambda: settings.seed)
    samples: int = Field(200, ge=1)
    search_radius: Optional[float] = Field(None, gt=0)
    tolerances: Dict[str, float] = Field(default_factory=dict)
    out: Optional[Path] = None
    format: Optional[OutputFormat] = None
    point: Optional[str] = None

    t_end: float = Field(10.0, ge=0)
    dt: float = Field(1e-3, gt=0)
    method: FlowMethod = "rk4"

    k: Optional[float] = Field(None, gt=0)
    s0: Optional[float] = None
    f0: Optional[float] = None
    fp0: Optional[float] = None
    s_max: Optional[float] = None
    radius: Optional[float] = Field(None, gt=0)
    sphere_residual: bool = False

    @model_validator(mode="after")
    def _check_command_inputs(self) -> "RunConfig":
        if self.command != "ode" and self.profile_path is None:
            raise ValueError(f"--profile is required for '{self.command}'")
        if self.command == "ode":
            if self.k is None:
                raise ValueError("--k is required for 'ode'")
            if self.sphere_residual:
                if self.radius is None:
                    raise ValueError("--radius is required with --sphere-residual")
            elif None in (self.s0, self.f0, self.fp0):
                raise ValueError("--s0, --f0 and --fp0 are required for 'ode'")
        return self

    @property
    def output_format(self) -> str:
        return self.format or DEFAULT_FORMATS[self.command]
