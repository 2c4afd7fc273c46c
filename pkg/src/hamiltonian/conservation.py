"""
Conserved quantities along Hamiltonian trajectories and their export rows.
"""

from typing import Dict, List, Optional

from loguru import logger
from pydantic import BaseModel, Field

from src.config.settings import Tolerances, settings
from src.hamiltonian.flow import torus_deviation, torus_of
from src.hamiltonian.models import Torus, Trajectory
from src.hamiltonian.quantities import conserved_quantities, quantity_drift
from src.profiles.base import RadialProfile


class ConservationReport(BaseModel):
    """Drift table of a trajectory."""

    mode: str
    method: Optional[str] = None
    samples: int
    drift: Dict[str, float] = Field(..., description="max |Q(z(t)) - Q(z0)| per quantity")
    torus: Torus
    torus_deviation: float
    torus_ok: bool

    def max_drift(self, prefix: str = "") -> float:
        matching = [v for k, v in self.drift.items() if k.startswith(prefix)]
        return max(matching) if matching else 0.0


def conservation_report(
    profile: RadialProfile,
    trajectory: Trajectory,
    tolerances: Optional[Tolerances] = None,
    torus_budget: Optional[float] = None,
) -> ConservationReport:
    """
    Drift of every conserved quantity over all samples, plus torus confinement.

    The drift recorded on the trajectory by the flow functions is reused.
    torus_budget defaults to torus_tol for closed-form runs; numeric runs
    pass their integrator budget.
    """
    tol = tolerances or settings.tolerances
    drift = trajectory.drift or quantity_drift(profile, trajectory.z, tol)

    torus = torus_of(trajectory.z0)
    deviation = torus_deviation(trajectory, torus)
    budget = torus_budget if torus_budget is not None else tol.torus_tol
    if deviation > budget:
        logger.warning(f"Trajectory leaves its torus by {deviation:.3e} (budget {budget:.1e})")

    return ConservationReport(
        mode=trajectory.mode,
        method=trajectory.method,
        samples=len(trajectory),
        drift=drift,
        torus=torus,
        torus_deviation=deviation,
        torus_ok=deviation <= budget,
    )


def trajectory_columns(dim: int) -> List[str]:
    """CSV header: t, x_*, y_*, r_*, f, h_TT, L_*."""
    idx = range(1, dim + 1)
    return (
        ["t"]
        + [f"x_{k}" for k in idx]
        + [f"y_{k}" for k in idx]
        + [f"r_{k}" for k in idx]
        + ["f", "h_TT"]
        + [f"L_{j}" for j in range(1, dim)]
    )


def trajectory_rows(
    profile: RadialProfile, trajectory: Trajectory, tolerances: Optional[Tolerances] = None
) -> List[List[float]]:
    rows = []
    for t, z in zip(trajectory.t, trajectory.z):
        q = conserved_quantities(profile, z, tolerances)
        rows.append(
            [float(t)]
            + z.real.tolist()
            + z.imag.tolist()
            + [q[f"r_{k}"] for k in range(1, profile.dim + 1)]
            + [q["f"], q["h_TT"]]
            + [q[f"L_{j}"] for j in range(1, profile.dim)]
        )
    return rows
