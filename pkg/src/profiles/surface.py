"""
Points of M = {g(r(z)) = 0}: radii lift, gradients, radial projection, sampling
and the boundedness scan.
"""

import itertools
from dataclasses import dataclass
from typing import List, Literal, Optional, Union

import numpy as np
from loguru import logger
from pydantic import BaseModel, Field

from src.config.settings import Tolerances, settings
from src.profiles.base import RadialProfile
from src.utils.errors import (
    ConvergenceError,
    DegenerateGradientError,
    DomainError,
    EmptySurfaceError,
    convergence_attempts,
)


def eval_radii(z) -> np.ndarray:
    """Return r_k = |z_k|² = x_k² + y_k²."""
    z = np.asarray(z, dtype=complex)
    return z.real**2 + z.imag**2


def realify(w) -> np.ndarray:
    """Complex (n+1)-vector to real 2(n+1)-vector ordered (x-block, y-block)."""
    w = np.asarray(w, dtype=complex)
    return np.concatenate([w.real, w.imag])


def complexify(v) -> np.ndarray:
    """Inverse of realify."""
    v = np.asarray(v, dtype=float)
    m = v.shape[-1] // 2
    return v[..., :m] + 1j * v[..., m:]


@dataclass(frozen=True, eq=False)
class SurfacePoint:
    """A point z of ℂ^{n+1} with its radii, residual |g(r)| and |∂f|."""

    z: np.ndarray
    r: np.ndarray
    residual: float
    grad_norm_complex: float

    @classmethod
    def from_z(cls, profile: RadialProfile, z) -> "SurfacePoint":
        z = np.asarray(z, dtype=complex)
        r = eval_radii(z)
        ev = profile.evaluate(r)
        return cls(
            z=z,
            r=r,
            residual=abs(ev.g),
            grad_norm_complex=float(np.sqrt(np.sum(r * ev.grad**2))),
        )

    @property
    def dim(self) -> int:
        return self.z.shape[0]

    @property
    def position(self) -> np.ndarray:
        """Position vector (x, y) in real coordinates."""
        return realify(self.z)

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.z))


PointLike = Union[SurfacePoint, np.ndarray, list, tuple]


def as_z(q: PointLike) -> np.ndarray:
    if isinstance(q, SurfacePoint):
        return q.z
    return np.asarray(q, dtype=complex)


def _resolve(tolerances: Optional[Tolerances]) -> Tolerances:
    return tolerances or settings.tolerances


def real_gradient(profile: RadialProfile, q: PointLike, tolerances: Optional[Tolerances] = None) -> np.ndarray:
    """
    Euclidean gradient of f(x, y) = g(x² + y²): f_{x_k} = 2 x_k g_k, f_{y_k} = 2 y_k g_k.

    Raises:
        DegenerateGradientError: If the norm is below grad_tol
    """
    tol = _resolve(tolerances)
    z = as_z(q)
    grad = profile.gradient(eval_radii(z))
    out = np.concatenate([2.0 * z.real * grad, 2.0 * z.imag * grad])
    if np.linalg.norm(out) < tol.grad_tol:
        raise DegenerateGradientError(f"|∇f| below {tol.grad_tol:g} at z={z}")
    return out


def complex_gradient(profile: RadialProfile, q: PointLike) -> np.ndarray:
    """f_k = ∂f/∂z_k = conj(z_k) g_k."""
    z = as_z(q)
    return np.conj(z) * profile.gradient(eval_radii(z))


def complex_hessian(profile: RadialProfile, q: PointLike) -> np.ndarray:
    """Hermitian matrix f_{j k̄} = δ_jk g_k + conj(z_j) z_k g_jk."""
    z = as_z(q)
    ev = profile.evaluate(eval_radii(z))
    return np.diag(ev.grad).astype(complex) + np.outer(np.conj(z), z) * ev.hess


def complex_hessian_entry(profile: RadialProfile, q: PointLike, j: int, k: int) -> complex:
    """Single entry f_{j k̄} (0-based indices)."""
    z = as_z(q)
    if not (0 <= j < z.shape[0] and 0 <= k < z.shape[0]):
        raise IndexError(f"Indices ({j}, {k}) out of range for dim {z.shape[0]}")
    return complex(complex_hessian(profile, z)[j, k])


def radial_scale(profile: RadialProfile, r0: np.ndarray, tol: float, max_iter: int, damping: float) -> float:
    """Solve g(t·r0) = 0 for t > 0 starting at t = 1."""
    t = 1.0
    for i in range(max_iter):
        ev = profile.evaluate(t * r0)
        if abs(ev.g) <= tol:
            return t
        slope = float(ev.grad @ r0)
        if slope == 0.0 or not np.isfinite(slope):
            raise ConvergenceError(f"Flat radial slope at t={t:g}")
        t_next = t - damping * ev.g / slope
        if not np.isfinite(t_next):
            raise ConvergenceError("Radial Newton produced a non-finite scale")
        t = t_next if t_next > 0 else 0.5 * t
        logger.trace(f"radial newton {i}: t={t:.17g} g={ev.g:.3e}")
    raise ConvergenceError(f"Radial projection did not converge in {max_iter} iterations")


def project_to_surface(
    profile: RadialProfile,
    z_guess,
    tolerances: Optional[Tolerances] = None,
    max_iter: Optional[int] = None,
) -> SurfacePoint:
    """
    Project a point onto M along its Reinhardt ray, keeping every phase arg(z_k).

    Runs a 1-D Newton iteration on t ↦ g(t·r(z_guess)); the returned point is
    sqrt(t)·z_guess. Failed runs are retried with stronger damping.

    Raises:
        ConvergenceError: After max_iter iterations on every attempt
    """
    tol = _resolve(tolerances)
    max_iter = max_iter or settings.max_iter
    z = np.asarray(z_guess, dtype=complex)
    r0 = eval_radii(z)
    if not np.any(r0 > 0):
        raise ConvergenceError("Cannot project the origin along a ray")

    for attempt in convergence_attempts():
        with attempt:
            damping = 0.5 ** (attempt.retry_state.attempt_number - 1)
            t = radial_scale(profile, r0, tol.surface_tol, max_iter, damping)

    return SurfacePoint.from_z(profile, np.sqrt(t) * z)


def sample_surface(
    profile: RadialProfile,
    count: int,
    seed: int,
    tolerances: Optional[Tolerances] = None,
    zero_fraction: float = 0.0,
    search_radius: Optional[float] = None,
) -> List[SurfacePoint]:
    """
    Sample points of M: random radii directions projected on the section, random phases.

    Args:
        profile: Defining function
        count: Number of points
        seed: Seed of the generator; equal seeds give identical samples
        zero_fraction: Share of draws with some radii forced to 0 (degenerate tori)
        search_radius: Points with max r_k > search_radius² are rejected; sized by
            search_box when not given

    Raises:
        EmptySurfaceError: If no section point is found
        ConvergenceError: If fewer than count points are found within the budget
    """
    tol = _resolve(tolerances)
    if search_radius is None:
        search_radius = search_box(profile, tolerances=tol).search_radius
    rng = np.random.default_rng(seed)
    dim = profile.dim
    points: List[SurfacePoint] = []
    budget = 100 * count + 100
    attempts = 0

    while len(points) < count and attempts < budget:
        attempts += 1
        direction = np.abs(rng.standard_normal(dim))
        if dim > 1 and zero_fraction > 0 and rng.random() < zero_fraction:
            zeros = rng.choice(dim, size=int(rng.integers(1, dim)), replace=False)
            direction[zeros] = 0.0
        theta = rng.uniform(0.0, 2.0 * np.pi, dim)
        if direction.sum() == 0:
            continue
        direction /= direction.sum()
        z_guess = np.sqrt(direction) * np.exp(1j * theta)

        try:
            q = project_to_surface(profile, z_guess, tol)
        except (ConvergenceError, DegenerateGradientError, DomainError) as e:
            logger.trace(f"rejected direction {direction}: {e}")
            continue
        if q.r.max() > search_radius**2 or q.grad_norm_complex <= tol.grad_tol:
            continue
        points.append(q)

    if not points:
        raise EmptySurfaceError(f"No point of M found after {attempts} draws")
    if len(points) < count:
        raise ConvergenceError(f"Only {len(points)} of {count} points found after {attempts} draws")
    logger.debug(f"Sampled {count} points in {attempts} draws (seed={seed})")
    return points


def axis_points(profile: RadialProfile, tolerances: Optional[Tolerances] = None) -> List[SurfacePoint]:
    """Points of M on the coordinate axes (maximally degenerate tori), where they exist."""
    points = []
    for k in range(profile.dim):
        z = np.zeros(profile.dim, dtype=complex)
        z[k] = 1.0
        try:
            points.append(project_to_surface(profile, z, tolerances))
        except (ConvergenceError, DegenerateGradientError):
            logger.debug(f"No point of M on axis {k}")
    return points


class BoundednessVerdict(BaseModel):
    """Outcome of the boundedness scan."""

    status: Literal["bounded", "unbounded", "inconclusive"]
    witness: Optional[List[float]] = Field(None, description="radii with g <= 0 on the box face")
    search_radius: float


def is_bounded(profile: RadialProfile, search_radius: float, grid_points: Optional[int] = None) -> BoundednessVerdict:
    """
    Grid scan of the sublevel set {g <= 0} in the radii box [0, search_radius²]^{n+1}.

    Returns unbounded with a witness if the sublevel set touches a face
    max r_k = search_radius², bounded if it is nonempty and stays inside,
    inconclusive otherwise. A heuristic flag, not a certificate.
    """
    if not search_radius > 0:
        raise ValueError(f"search_radius must be positive, got {search_radius}")
    m = grid_points or settings.grid_points
    box = search_radius**2
    axis = np.linspace(0.0, box, m)
    grid = np.array(list(itertools.product(axis, repeat=profile.dim)))
    inside = profile.value(grid) <= 0.0
    on_face = grid.max(axis=1) >= box

    touching = grid[inside & on_face]
    if touching.size:
        witness = touching[0].tolist()
        logger.info(f"Sublevel set reaches the box face at r={witness}")
        return BoundednessVerdict(status="unbounded", witness=witness, search_radius=search_radius)
    if inside.any():
        return BoundednessVerdict(status="bounded", search_radius=search_radius)
    return BoundednessVerdict(status="inconclusive", search_radius=search_radius)


def search_box(
    profile: RadialProfile,
    search_radius: Optional[float] = None,
    grid_points: Optional[int] = None,
    tolerances: Optional[Tolerances] = None,
) -> BoundednessVerdict:
    """
    Boundedness scan in a box sized from the profile.

    A fixed search_radius (argument or settings) is scanned once. Otherwise the
    scan starts at twice the largest axis-point norm, or 1 when M meets no axis,
    and doubles the box until the sublevel set lies strictly inside it or
    settings.max_search_radius is reached. The verdict carries the box used.
    """
    fixed = search_radius if search_radius is not None else settings.search_radius
    if fixed is not None:
        return is_bounded(profile, fixed, grid_points)

    norms = [q.norm for q in axis_points(profile, tolerances)]
    radius = 2.0 * max(norms) if norms else 1.0
    cap = max(settings.max_search_radius, radius)
    while True:
        verdict = is_bounded(profile, radius, grid_points)
        if verdict.status == "bounded" or radius >= cap:
            logger.debug(f"Search box radius {radius:.6g}: {verdict.status}")
            return verdict
        radius = min(2.0 * radius, cap)
