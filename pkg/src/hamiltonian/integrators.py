"""
Fixed-step integrators for ż_k = -i z_k g_k(r(z)).
"""

from typing import Callable, Dict, Optional

import numpy as np
from loguru import logger

from src.config.settings import Tolerances, settings
from src.hamiltonian.flow import sample_grid
from src.hamiltonian.models import Trajectory
from src.hamiltonian.quantities import quantity_drift
from src.profiles.base import RadialProfile
from src.profiles.surface import eval_radii
from src.utils.errors import ConvergenceError, DomainError, StepFailureError

VectorField = Callable[[np.ndarray], np.ndarray]

MIDPOINT_TOL = 1e-12
MIDPOINT_MAX_ITER = 20


def hamiltonian_rhs(profile: RadialProfile) -> VectorField:
    """Complex right-hand side z ↦ -i z g(r(z))."""

    def rhs(z: np.ndarray) -> np.ndarray:
        return -1j * z * profile.gradient(eval_radii(z))

    return rhs


def rk4_step(rhs: VectorField, z: np.ndarray, h: float) -> np.ndarray:
    """Classical fourth-order Runge-Kutta step."""
    k1 = rhs(z)
    k2 = rhs(z + 0.5 * h * k1)
    k3 = rhs(z + 0.5 * h * k2)
    k4 = rhs(z + h * k3)
    return z + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)


def implicit_midpoint_step(rhs: VectorField, z: np.ndarray, h: float) -> np.ndarray:
    """
    Implicit midpoint step z1 = z + h·F((z + z1)/2), solved by fixed-point iteration.

    Raises:
        ConvergenceError: If the iteration does not settle within MIDPOINT_MAX_ITER sweeps
    """
    z1 = z + h * rhs(z)
    for _ in range(MIDPOINT_MAX_ITER):
        z_next = z + h * rhs(0.5 * (z + z1))
        change = np.linalg.norm(z_next - z1)
        z1 = z_next
        if change <= MIDPOINT_TOL * (1.0 + np.linalg.norm(z1)):
            return z1
    raise ConvergenceError(f"Implicit midpoint did not converge in {MIDPOINT_MAX_ITER} iterations (h={h:g})")


INTEGRATORS: Dict[str, Callable[[VectorField, np.ndarray, float], np.ndarray]] = {
    "rk4": rk4_step,
    "implicit_midpoint": implicit_midpoint_step,
}


def flow_numeric(
    profile: RadialProfile,
    z0,
    t_end: float,
    dt: float,
    method: str = "rk4",
    max_samples: Optional[int] = None,
    tolerances: Optional[Tolerances] = None,
) -> Trajectory:
    """
    Integrate the Hamiltonian flow with a fixed step h = t_end/ceil(t_end/dt).

    Records at most max_samples equally spaced states and the drift of every
    conserved quantity (r_k, f, h_TT, L^j) over them.

    Raises:
        ValueError: For an unknown method or invalid step parameters
        StepFailureError: If a state leaves the evaluation domain
    """
    if method not in INTEGRATORS:
        raise ValueError(f"Unknown integrator '{method}', expected one of {sorted(INTEGRATORS)}")
    step_fn = INTEGRATORS[method]
    rhs = hamiltonian_rhs(profile)
    steps, times, stride = sample_grid(t_end, dt, max_samples or settings.max_samples)
    h = t_end / steps if steps else 0.0

    z = np.asarray(z0, dtype=complex).copy()
    states = [z.copy()]
    for i in range(1, steps + 1):
        try:
            z = step_fn(rhs, z, h)
        except DomainError as e:
            raise StepFailureError(f"Step {i} left the domain: {e}")
        if not np.all(np.isfinite(z)):
            raise StepFailureError(f"Step {i} produced a non-finite state")
        if i % stride == 0 or i == steps:
            states.append(z.copy())

    trajectory = Trajectory(t=times, z=np.array(states), mode="numeric", method=method, step=h)
    trajectory.drift = quantity_drift(profile, trajectory.z, tolerances)
    logger.debug(f"{method}: {steps} steps of {h:.3e}, {len(trajectory)} samples, drift {trajectory.drift}")
    return trajectory

