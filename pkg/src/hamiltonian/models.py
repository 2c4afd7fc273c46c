"""
Data models for Hamiltonian trajectories.
"""

from dataclasses import dataclass, field
from typing import Dict, List, Literal, Optional

import numpy as np
from pydantic import BaseModel, Field


@dataclass(eq=False)
class Trajectory:
    """
    Samples (t_i, z(t_i)) of one orbit of ż_k = -i z_k g_k(r).

    Attributes:
        t: Sample times, strictly increasing
        z: Complex array of shape (len(t), n+1)
        mode: "closed_form" or "numeric"
        method: Integrator name for numeric runs
        step: Fixed step for numeric runs
        drift: Max deviation from the initial value per conserved quantity (r_k, f, h_TT, L^j)
    """

    t: np.ndarray
    z: np.ndarray
    mode: Literal["closed_form", "numeric"]
    method: Optional[str] = None
    step: Optional[float] = None
    drift: Dict[str, float] = field(default_factory=dict)

    def __post_init__(self):
        self.t = np.asarray(self.t, dtype=float)
        self.z = np.atleast_2d(np.asarray(self.z, dtype=complex))
        if self.t.ndim != 1 or self.z.shape[0] != self.t.shape[0]:
            raise ValueError(f"Got {self.t.shape[0]} times for {self.z.shape[0]} states")
        if np.any(np.diff(self.t) <= 0):
            raise ValueError("Trajectory times must be strictly increasing")

    def __len__(self) -> int:
        return self.t.shape[0]

    @property
    def z0(self) -> np.ndarray:
        return self.z[0]

    @property
    def end(self) -> np.ndarray:
        return self.z[-1]


class Torus(BaseModel):
    """Invariant torus {|z_k| = c_k}."""

    radii: List[float] = Field(..., description="c_k = |z_k(0)|")
    degenerate: bool = Field(..., description="some c_k vanishes")
