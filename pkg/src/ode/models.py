"""
Data models for the constant-curvature profile ODE
s f f'' = s f'² - k (f + s f'²)^{3/2} - f f'.
"""

from dataclasses import dataclass
from typing import List, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field


@dataclass(frozen=True)
class OdeState:
    """
    One sample (s, f, f') of a profile with curvature constant k.

    The profile of ℂ² is {f(|z_2|²) - |z_1|² = 0}; f = 0 closes it.
    """

    s: float
    f: float
    fp: float
    k: float

    @property
    def domain_value(self) -> float:
        """f + s f'², the base of the 3/2 power."""
        return self.f + self.s * self.fp**2


class StepControl(BaseModel):
    """Adaptive step-size parameters of the embedded RK pair."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    rtol: float = Field(1e-9, gt=0)
    atol: float = Field(1e-12, gt=0)
    h_init: float = Field(1e-4, gt=0)
    h_min: float = Field(1e-14, gt=0)
    h_max: Optional[float] = Field(None, gt=0)
    max_steps: int = Field(1_000_000, ge=1)
    crossing_tol: float = Field(1e-10, gt=0)


@dataclass
class OdeProfile:
    """Accepted states of one integration and how it ended."""

    states: List[OdeState]
    termination: Literal["s_max", "crossing"]
    crossing: Optional[float] = None
    rejected_steps: int = 0

    @property
    def last(self) -> OdeState:
        return self.states[-1]
