"""
Closed-form Hamiltonian and characteristic flows of a radial defining function.

Along ż_k = -i ∂f/∂z̄_k = -i z_k g_k every radius r_k is conserved, so each
coordinate rotates with the constant frequency g_k(r(z0)).
"""

from typing import Optional

import numpy as np

from src.config.settings import Tolerances, settings
from src.geometry.frame import unit_normal
from src.hamiltonian.models import Torus, Trajectory
from src.hamiltonian.quantities import quantity_drift
from src.profiles.base import RadialProfile
from src.profiles.surface import SurfacePoint, as_z, eval_radii, realify
from src.utils.errors import DegenerateGradientError, PreconditionError


def _frequencies(profile: RadialProfile, z0) -> np.ndarray:
    return profile.gradient(eval_radii(z0))


def _arc_frequencies(profile: RadialProfile, z0, tolerances: Optional[Tolerances]) -> np.ndarray:
    tol = tolerances or settings.tolerances
    point = SurfacePoint.from_z(profile, z0)
    if point.residual > tol.surface_tol:
        raise PreconditionError(f"Start point is off M (|g| = {point.residual:.3e})")
    if point.grad_norm_complex < tol.grad_tol:
        raise DegenerateGradientError(f"|∂f| below {tol.grad_tol:g} at z={point.z}")
    return _frequencies(profile, point.z) / point.grad_norm_complex


def flow_closed_form(profile: RadialProfile, z0, t: float) -> np.ndarray:
    """z_k(t) = z_k(0) exp(-i g_k(r(z0)) t); valid off M too."""
    z0 = as_z(z0)
    return z0 * np.exp(-1j * _frequencies(profile, z0) * t)


def characteristic_integral_curve(
    profile: RadialProfile, z0, t: float, tolerances: Optional[Tolerances] = None
) -> np.ndarray:
    """Unit-speed orbit of T: z_k(t) = z_k(0) exp(-i g_k t / |∂f|)."""
    z0 = as_z(z0)
    return z0 * np.exp(-1j * _arc_frequencies(profile, z0, tolerances) * t)


def hamiltonian_vector_field(profile: RadialProfile, z) -> np.ndarray:
    """
    Real form of ż = -i z g(r), i.e. ½ times the symplectic matrix applied to ∇f.

    Returns:
        Real vector (ẋ, ẏ) = (y g, -x g)
    """
    z = as_z(z)
    return realify(-1j * z * _frequencies(profile, z))


def sample_grid(t_end: float, dt: float, max_samples: Optional[int] = None):
    """
    Fixed-step grid covering [0, t_end] exactly.

    Returns:
        (steps, sample times, stride): step h = t_end/steps <= dt; every
        stride-th step is recorded, the last one always, at most max_samples in all.
    """
    if not dt > 0:
        raise ValueError(f"dt must be positive, got {dt}")
    if t_end < 0:
        raise ValueError(f"t_end must be nonnegative, got {t_end}")
    max_samples = max_samples or settings.max_samples
    if max_samples < 2:
        raise ValueError("max_samples must be at least 2")
    steps = int(np.ceil(t_end / dt - 1e-12)) if t_end > 0 else 0
    stride = max(1, int(np.ceil(steps / (max_samples - 1)))) if steps else 1
    indices = np.arange(0, steps + 1, stride)
    if indices[-1] != steps:
        indices = np.append(indices, steps)
    h = t_end / steps if steps else 0.0
    return steps, indices * h, stride


def flow_closed_form_trajectory(
    profile: RadialProfile,
    z0,
    t_end: float,
    dt: float,
    max_samples: Optional[int] = None,
    tolerances: Optional[Tolerances] = None,
) -> Trajectory:
    """Closed-form flow sampled on the same grid flow_numeric uses, with the drift of every conserved quantity."""
    z0 = as_z(z0)
    times = sample_grid(t_end, dt, max_samples)[1]
    z = z0[None, :] * np.exp(-1j * np.outer(times, _frequencies(profile, z0)))
    trajectory = Trajectory(t=times, z=z, mode="closed_form")
    trajectory.drift = quantity_drift(profile, z, tolerances)
    return trajectory


def orbit_normal_curvature(profile: RadialProfile, z0, tolerances: Optional[Tolerances] = None) -> float:
    """
    Normal curvature g̃(γ'', N) of the arc-length characteristic orbit through z0.

    γ''_k = -(g_k/|∂f|)² z_k; the value coincides with h(T, T).
    """
    z0 = as_z(z0)
    omega = _arc_frequencies(profile, z0, tolerances)
    acceleration = realify(-(omega**2) * z0)
    return float(acceleration @ unit_normal(profile, z0, tolerances))


def torus_of(z0) -> Torus:
    """Invariant torus c_k = |z0_k|; degenerate when some c_k = 0."""
    radii = np.abs(as_z(z0))
    return Torus(radii=radii.tolist(), degenerate=bool(np.any(radii == 0.0)))


def torus_deviation(trajectory: Trajectory, torus: Torus) -> float:
    """max over samples and k of ||z_k(t)| - c_k|."""
    return float(np.max(np.abs(np.abs(trajectory.z) - np.asarray(torus.radii))))
