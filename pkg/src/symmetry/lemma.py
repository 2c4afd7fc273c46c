"""
Position vector against the adapted frame: the flatness of φ = |p|²/2 along T.
"""

from dataclasses import dataclass
from typing import Optional

import numpy as np

from src.config.settings import Tolerances
from src.geometry.frame import build_frame, characteristic_direction
from src.hamiltonian.flow import characteristic_integral_curve
from src.profiles.base import RadialProfile
from src.profiles.surface import PointLike, as_z, eval_radii, realify


def distance_half_sq(q: PointLike) -> float:
    """φ(q) = ‖z‖²/2 = Σ r_k / 2."""
    return float(np.sum(eval_radii(as_z(q))) / 2.0)


def check_lemma(profile: RadialProfile, q: PointLike, tolerances: Optional[Tolerances] = None) -> float:
    """|g̃(p, T_p)|, identically zero on a Reinhardt boundary."""
    z = as_z(q)
    return float(abs(realify(z) @ characteristic_direction(profile, z, tolerances)))


def lemma_flow_derivative(
    profile: RadialProfile, q: PointLike, eps: float = 1e-5, tolerances: Optional[Tolerances] = None
) -> float:
    """T(φ) by a central difference along the characteristic integral curve."""
    z = as_z(q)
    forward = characteristic_integral_curve(profile, z, eps, tolerances)
    backward = characteristic_integral_curve(profile, z, -eps, tolerances)
    return (distance_half_sq(forward) - distance_half_sq(backward)) / (2.0 * eps)


@dataclass(frozen=True, eq=False)
class PositionDecomposition:
    """p = normal·N + Σ horizontal_a E_a + characteristic·T."""

    normal: float
    horizontal: np.ndarray
    characteristic: float

    @property
    def horizontal_norm(self) -> float:
        return float(np.linalg.norm(self.horizontal))


def position_decomposition(
    profile: RadialProfile, q: PointLike, tolerances: Optional[Tolerances] = None
) -> PositionDecomposition:
    """Components of the position vector in the frame (X, Y, T, N)."""
    z = as_z(q)
    p = realify(z)
    frame = build_frame(profile, z, tolerances)
    return PositionDecomposition(
        normal=float(p @ frame.N),
        horizontal=frame.H_basis @ p,
        characteristic=float(p @ frame.T),
    )
