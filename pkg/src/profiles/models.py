"""
Pydantic models for profile specifications.
"""

from typing import Any, Dict, Literal, Optional
from pydantic import BaseModel, ConfigDict, Field


FamilyName = Literal["sphere", "ellipsoid", "cylinder", "polynomial"]
DerivativeMode = Literal["analytic", "finite_difference"]


class ProfileSpec(BaseModel):
    """JSON document describing a Reinhardt defining function g(r)."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    dim: int = Field(..., ge=1, description="complex dimension n+1 of the ambient space")
    family: FamilyName = Field(..., description="concrete family of g")
    params: Dict[str, Any] = Field(default_factory=dict, description="family parameters")
    derivative_mode: DerivativeMode = Field("analytic")
    h_fd: Optional[float] = Field(None, gt=0, description="finite-difference step")
