"""
Adapted orthonormal frame of M: inner normal N, characteristic direction T = J·N
and a horizontal basis X_1..X_n, Y_k = J·X_k.
"""

from dataclasses import dataclass
from typing import Optional

import numpy as np

from src.config.settings import Tolerances, settings
from src.profiles.base import RadialProfile
from src.profiles.surface import PointLike, as_z, complex_gradient, real_gradient, realify
from src.utils.errors import DegenerateGradientError


def complex_structure(v) -> np.ndarray:
    """J on real coordinates: multiplication by i, (x, y) ↦ (-y, x)."""
    v = np.asarray(v, dtype=float)
    m = v.shape[-1] // 2
    return np.concatenate([-v[..., m:], v[..., :m]], axis=-1)


def symplectic_matrix_action(v) -> np.ndarray:
    """Canonical symplectic matrix [[0, I], [-I, 0]]: (x, y) ↦ (y, -x) = -J."""
    return -complex_structure(v)


def unit_normal(profile: RadialProfile, q: PointLike, tolerances: Optional[Tolerances] = None) -> np.ndarray:
    """Inner unit normal N = -∇f/|∇f|, pointing into {f < 0}."""
    grad = real_gradient(profile, q, tolerances)
    return -grad / np.linalg.norm(grad)


def characteristic_direction(profile: RadialProfile, q: PointLike, tolerances: Optional[Tolerances] = None) -> np.ndarray:
    """T = J·N = (f_y, -f_x)/|∇f|."""
    return complex_structure(unit_normal(profile, q, tolerances))


def horizontal_complex_basis(
    profile: RadialProfile, q: PointLike, tolerances: Optional[Tolerances] = None
) -> np.ndarray:
    """
    Hermitian-orthonormal basis Z_1..Z_n of {Z : Σ_k Z_k f_k = 0}.

    Gram-Schmidt on the coordinate vectors, skipping the pivot index with the
    largest |f_k| (first one on ties), so the basis is reproducible at points
    with vanishing components.

    Returns:
        Array of shape (n, n+1); row a is Z_a
    """
    tol = tolerances or settings.tolerances
    fvec = complex_gradient(profile, q)
    norm = np.linalg.norm(fvec)
    if norm < tol.grad_tol:
        raise DegenerateGradientError(f"|∂f| below {tol.grad_tol:g}")

    u = np.conj(fvec) / norm
    pivot = int(np.argmax(np.abs(fvec)))
    basis = []
    for k in range(fvec.shape[0]):
        if k == pivot:
            continue
        v = np.zeros(fvec.shape[0], dtype=complex)
        v[k] = 1.0
        # two passes of modified Gram-Schmidt
        for _ in range(2):
            v = v - np.vdot(u, v) * u
            for b in basis:
                v = v - np.vdot(b, v) * b
        basis.append(v / np.linalg.norm(v))
    return np.array(basis, dtype=complex).reshape(len(basis), fvec.shape[0])


@dataclass(frozen=True, eq=False)
class Frame:
    """Orthonormal frame {X_1..X_n, Y_1..Y_n, T, N} at a point of M."""

    N: np.ndarray
    T: np.ndarray
    X: np.ndarray
    Y: np.ndarray
    Z: np.ndarray

    @property
    def tangent(self) -> np.ndarray:
        """Tangent frame rows ordered (X_1..X_n, Y_1..Y_n, T)."""
        return np.vstack([self.X, self.Y, self.T[None, :]])

    @property
    def H_basis(self) -> np.ndarray:
        """Horizontal rows (X_1..X_n, Y_1..Y_n)."""
        return np.vstack([self.X, self.Y])

    @staticmethod
    def J_action(v) -> np.ndarray:
        return complex_structure(v)


def build_frame(profile: RadialProfile, q: PointLike, tolerances: Optional[Tolerances] = None) -> Frame:
    """Assemble the adapted frame from the horizontal complex basis."""
    N = unit_normal(profile, q, tolerances)
    Z = horizontal_complex_basis(profile, q, tolerances)
    dim = as_z(q).shape[0]
    X = np.array([realify(w) for w in Z]).reshape(len(Z), 2 * dim)
    Y = complex_structure(X) if len(Z) else X.copy()
    return Frame(N=N, T=complex_structure(N), X=X, Y=Y, Z=Z)
