"""
Second fundamental form and the curvatures derived from it.

All real-notation quantities use the real Hessian of f(x, y) = g(x² + y²) and
‖∇f‖ = 2|∂f|; complex-notation ones use |∂f|² = Σ r_k g_k².
"""

from typing import Optional

import numpy as np

from src.config.settings import Tolerances, settings
from src.geometry.frame import build_frame, unit_normal
from src.profiles.base import RadialProfile
from src.profiles.surface import PointLike, as_z, eval_radii, real_gradient
from src.utils.errors import DegenerateGradientError, NonTangentError


def real_hessian(profile: RadialProfile, q: PointLike) -> np.ndarray:
    """
    Real Hessian of f in the (x-block, y-block) layout.

    f_{x_j x_k} = 2 δ_jk g_k + 4 x_j x_k g_jk, and likewise for the xy and yy blocks.
    """
    z = as_z(q)
    x, y = z.real, z.imag
    ev = profile.evaluate(eval_radii(z))
    diag = 2.0 * np.diag(ev.grad)
    hxx = diag + 4.0 * np.outer(x, x) * ev.hess
    hxy = 4.0 * np.outer(x, y) * ev.hess
    hyy = diag + 4.0 * np.outer(y, y) * ev.hess
    return np.block([[hxx, hxy], [hxy.T, hyy]])


def second_fundamental_form(
    profile: RadialProfile,
    q: PointLike,
    V,
    W,
    tolerances: Optional[Tolerances] = None,
) -> float:
    """
    h(V, W) = Vᵀ Hess f W / ‖∇f‖ for the inner normal.

    Raises:
        NonTangentError: If V or W has a normal component above tangent_tol
    """
    tol = tolerances or settings.tolerances
    grad = real_gradient(profile, q, tol)
    gnorm = np.linalg.norm(grad)
    V = np.asarray(V, dtype=float)
    W = np.asarray(W, dtype=float)
    for name, vec in (("V", V), ("W", W)):
        normal_part = abs(vec @ grad) / gnorm
        if normal_part > tol.tangent_tol * max(1.0, np.linalg.norm(vec)):
            raise NonTangentError(f"{name} has normal component {normal_part:.3e}")
    return float(V @ real_hessian(profile, q) @ W / gnorm)


def second_fundamental_matrix(profile: RadialProfile, q: PointLike, tolerances: Optional[Tolerances] = None) -> np.ndarray:
    """
    Matrix of h in the tangent frame (X_1..X_n, Y_1..Y_n, T).

    The last diagonal entry is h(T, T); the trace over 2n+1 is H.
    """
    frame = build_frame(profile, q, tolerances)
    E = frame.tangent
    grad_norm = np.linalg.norm(real_gradient(profile, q, tolerances))
    S = E @ real_hessian(profile, q) @ E.T / grad_norm
    return 0.5 * (S + S.T)


def characteristic_curvature_radial(profile: RadialProfile, q: PointLike, tolerances: Optional[Tolerances] = None) -> float:
    """h(T, T) = Σ r_k g_k³ / (Σ r_k g_k²)^{3/2}."""
    tol = tolerances or settings.tolerances
    r = eval_radii(as_z(q))
    g = profile.gradient(r)
    denom = float(np.sum(r * g**2))
    if np.sqrt(denom) < tol.grad_tol:
        raise DegenerateGradientError(f"|∂f| below {tol.grad_tol:g} at r={r}")
    return float(np.sum(r * g**3) / denom**1.5)


def characteristic_curvature_oracle(profile: RadialProfile, q: PointLike, tolerances: Optional[Tolerances] = None) -> float:
    """h(T, T) through the real Hessian, independent of the radial formula."""
    T = build_frame(profile, q, tolerances).T
    return second_fundamental_form(profile, q, T, T, tolerances)


def mean_curvature(profile: RadialProfile, q: PointLike, tolerances: Optional[Tolerances] = None) -> float:
    """H = (tr Hess f - Nᵀ Hess f N) / ((2n+1) ‖∇f‖)."""
    hess = real_hessian(profile, q)
    grad_norm = np.linalg.norm(real_gradient(profile, q, tolerances))
    N = unit_normal(profile, q, tolerances)
    tangent_dim = hess.shape[0] - 1
    return float((np.trace(hess) - N @ hess @ N) / (tangent_dim * grad_norm))
