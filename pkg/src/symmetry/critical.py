"""
Critical points of φ = |p|²/2 on M, searched in radii space.

On a support S (r_k > 0 for k in S, r_k = 0 elsewhere) the Lagrange system is
    g(r) = 0,  μ g_k(r) = 1 for k in S,
and every radii solution lifts to a torus of critical points of φ.
"""

import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Any, Dict, List, Literal, Optional, Sequence, Tuple

import numpy as np
from loguru import logger
from scipy.linalg import null_space
from scipy.optimize import least_squares

from src.config.settings import Tolerances, settings
from src.geometry.curvature import characteristic_curvature_radial, second_fundamental_matrix
from src.geometry.frame import build_frame, unit_normal
from src.profiles.base import RadialProfile
from src.profiles.surface import SurfacePoint, radial_scale, realify, search_box
from src.utils.errors import ConvergenceError, DegenerateGradientError, PreconditionError, convergence_attempts

Kind = Literal["max", "min", "saddle", "undetermined"]

LAGRANGE_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class CriticalPointResult:
    """A converged critical torus of φ, represented by its point with zero phases."""

    p_hat: SurfacePoint
    norm: float
    h_TT_at: float
    rigidity_residual: float
    kind: Kind
    multiplier: float
    parallel_residual: float
    hessian_eigenvalues: np.ndarray
    relation_holds: bool

    def to_dict(self) -> Dict[str, Any]:
        return {
            "radii": self.p_hat.r.tolist(),
            "z_real": self.p_hat.z.real.tolist(),
            "z_imag": self.p_hat.z.imag.tolist(),
            "norm": self.norm,
            "h_TT_at": self.h_TT_at,
            "rigidity_residual": self.rigidity_residual,
            "kind": self.kind,
            "multiplier": self.multiplier,
            "parallel_residual": self.parallel_residual,
            "hessian_eigenvalues": self.hessian_eigenvalues.tolist(),
            "relation_holds": self.relation_holds,
        }


def _embed(profile: RadialProfile, support: Sequence[int], r_s: np.ndarray) -> np.ndarray:
    r = np.zeros(profile.dim)
    r[list(support)] = np.maximum(r_s, 0.0)
    return r


def _lagrange_residual(profile: RadialProfile, support: Sequence[int], u: np.ndarray) -> np.ndarray:
    r_s, mu = u[:-1], u[-1]
    ev_g = float(profile.value(_embed(profile, support, r_s)))
    grad = profile.gradient(_embed(profile, support, r_s))[list(support)]
    return np.concatenate([[ev_g], mu * grad - 1.0])


def _lagrange_jacobian(profile: RadialProfile, support: Sequence[int], u: np.ndarray) -> np.ndarray:
    r_s, mu = u[:-1], u[-1]
    ev = profile.evaluate(_embed(profile, support, r_s))
    idx = list(support)
    grad_s = ev.grad[idx]
    m = len(idx)
    jac = np.zeros((m + 1, m + 1))
    jac[0, :m] = grad_s
    jac[1:, :m] = mu * ev.hess[np.ix_(idx, idx)]
    jac[1:, m] = grad_s
    return jac


def _solve_support(
    profile: RadialProfile, support: Tuple[int, ...], start: np.ndarray, seed: int
) -> Optional[np.ndarray]:
    """Solve the Lagrange system from one start; None when every attempt fails."""
    rng = np.random.default_rng(seed)
    try:
        for attempt in convergence_attempts():
            with attempt:
                n_try = attempt.retry_state.attempt_number
                r0 = start * (1.0 + 0.1 * (n_try - 1) * rng.standard_normal(start.shape))
                r0 = np.maximum(r0, 1e-8)
                grad = profile.gradient(_embed(profile, support, r0))[list(support)]
                mu0 = 1.0 / np.mean(grad) if np.mean(grad) != 0 else 1.0
                u0 = np.concatenate([r0, [mu0]])
                lower = np.concatenate([np.zeros(len(support)), [-np.inf]])
                upper = np.full(len(support) + 1, np.inf)
                fit = least_squares(
                    lambda u: _lagrange_residual(profile, support, u),
                    u0,
                    jac=lambda u: _lagrange_jacobian(profile, support, u),
                    bounds=(lower, upper),
                    method="trf",
                    xtol=1e-15,
                    ftol=1e-15,
                    gtol=1e-15,
                    max_nfev=200,
                )
                residual = float(np.max(np.abs(fit.fun)))
                if not np.all(np.isfinite(fit.x)) or residual > LAGRANGE_TOL:
                    raise ConvergenceError(f"Lagrange residual {residual:.3e} on support {support}")
                return fit.x
    except (ConvergenceError, DegenerateGradientError) as e:
        logger.debug(f"Start on support {support} discarded: {e}")
    return None


def _starts(profile: RadialProfile, support: Tuple[int, ...], count: int, rng: np.random.Generator) -> List[np.ndarray]:
    """Section points on a support: the equal-weight direction plus random ones."""
    directions = [np.full(len(support), 1.0 / len(support))]
    directions += [rng.dirichlet(np.ones(len(support))) for _ in range(count)]
    starts = []
    for d in directions:
        try:
            r0 = _embed(profile, support, d)
            t = radial_scale(profile, r0, settings.tolerances.surface_tol, settings.max_iter, 1.0)
        except (ConvergenceError, DegenerateGradientError):
            continue
        starts.append(t * d)
    return starts


def classify(profile: RadialProfile, point: SurfacePoint, tolerances: Optional[Tolerances] = None) -> Tuple[Kind, np.ndarray]:
    """
    Signature of Hess_M φ = Id + g̃(p, N)·h off the critical torus.

    The torus directions i z_k ∂_k are removed first. A spectrum that is
    empty or has eigenvalues within critical_tol of zero is undetermined,
    unless it also has both signs.
    """
    tol = tolerances or settings.tolerances
    frame = build_frame(profile, point.z, tol)
    E = frame.tangent
    p = point.position
    hess = np.eye(E.shape[0]) + (p @ frame.N) * second_fundamental_matrix(profile, point.z, tol)

    torus = np.array([realify(1j * point.z[k] * np.eye(point.dim)[k]) for k in range(point.dim) if point.r[k] > 0])
    K = null_space(torus @ E.T) if torus.size else np.eye(E.shape[0])
    if K.shape[1] == 0:
        return "undetermined", np.zeros(0)
    eigs = np.linalg.eigvalsh(K.T @ hess @ K)

    if np.all(eigs > tol.critical_tol):
        return "min", eigs
    if np.all(eigs < -tol.critical_tol):
        return "max", eigs
    if np.any(eigs > tol.critical_tol) and np.any(eigs < -tol.critical_tol):
        return "saddle", eigs
    return "undetermined", eigs


def check_critical_relation(profile: RadialProfile, cp: CriticalPointResult) -> float:
    """|1 - |p̂|·h_p̂(T, T)|."""
    return abs(1.0 - cp.norm * characteristic_curvature_radial(profile, cp.p_hat))


def _build_result(profile: RadialProfile, r: np.ndarray, mu: float, tol: Tolerances) -> CriticalPointResult:
    point = SurfacePoint.from_z(profile, np.sqrt(r).astype(complex))
    h_tt = characteristic_curvature_radial(profile, point, tol)
    rigidity = abs(1.0 - point.norm * h_tt)
    parallel = float(np.linalg.norm(point.position + point.norm * unit_normal(profile, point, tol)))
    kind, eigs = classify(profile, point, tol)
    holds = rigidity <= tol.critical_tol
    if not holds:
        logger.warning(
            f"Critical point r={r.tolist()} ({kind}) has rigidity residual {rigidity:.3e} (multiplier {mu:.3e})"
        )
    return CriticalPointResult(
        p_hat=point,
        norm=point.norm,
        h_TT_at=h_tt,
        rigidity_residual=rigidity,
        kind=kind,
        multiplier=float(mu),
        parallel_residual=parallel,
        hessian_eigenvalues=eigs,
        relation_holds=holds,
    )


def find_critical_points(
    profile: RadialProfile,
    tolerances: Optional[Tolerances] = None,
    multistart: Optional[int] = None,
    seed: Optional[int] = None,
    workers: Optional[int] = None,
    search_radius: Optional[float] = None,
) -> List[CriticalPointResult]:
    """
    All critical tori of φ reachable from the multi-start, sorted by norm then radii.

    Every nonempty support is searched from its equal-weight section point and
    from random section points; starts run concurrently and results are merged
    in task order, deduplicated by radii within dedup_tol.

    Raises:
        PreconditionError: If the profile is not found bounded
        ConvergenceError: If no start converges
    """
    tol = tolerances or settings.tolerances
    multistart = multistart if multistart is not None else settings.multistart
    seed = seed if seed is not None else settings.seed
    workers = workers or settings.workers
    verdict = search_box(profile, search_radius, tolerances=tol)
    if verdict.status != "bounded":
        raise PreconditionError(f"Critical point search needs a bounded profile, scan says {verdict.status}")

    supports = [
        s for size in range(1, profile.dim + 1) for s in itertools.combinations(range(profile.dim), size)
    ]
    per_support = max(1, multistart // len(supports))
    rng = np.random.default_rng(seed)
    tasks = []
    for support in supports:
        for start in _starts(profile, support, per_support, rng):
            tasks.append((support, start, int(rng.integers(2**31))))

    with ThreadPoolExecutor(max_workers=workers) as pool:
        solutions = list(pool.map(lambda task: _solve_support(profile, *task), tasks))

    found: List[Tuple[np.ndarray, float]] = []
    for (support, _, _), u in zip(tasks, solutions):
        if u is None:
            continue
        r = _embed(profile, support, u[:-1])
        if any(np.max(np.abs(r - other)) <= tol.dedup_tol for other, _ in found):
            continue
        found.append((r, float(u[-1])))

    if not found:
        raise ConvergenceError(f"No critical point found from {len(tasks)} starts")

    found.sort(key=lambda item: (float(np.sqrt(np.sum(item[0]))), tuple(item[0])))
    results = [_build_result(profile, r, mu, tol) for r, mu in found]
    logger.info(f"Found {len(results)} critical tori from {len(tasks)} starts on {len(supports)} supports")
    return results
