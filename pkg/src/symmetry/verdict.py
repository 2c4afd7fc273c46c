"""
Numerical rigidity verdict: constant characteristic curvature on a bounded
Reinhardt boundary should mean a sphere of radius 1/h(T, T).
"""

from concurrent.futures import ThreadPoolExecutor
from typing import Any, Dict, List, Literal, Optional

import numpy as np
from loguru import logger
from pydantic import BaseModel, Field

from src.config.settings import Tolerances, settings
from src.geometry.curvature import characteristic_curvature_radial
from src.profiles.base import RadialProfile
from src.profiles.surface import SurfacePoint, axis_points, sample_surface, search_box


class WitnessPoint(BaseModel):
    z_real: List[float]
    z_imag: List[float]
    norm: float
    h_TT: float

    @classmethod
    def of(cls, point: SurfacePoint, h_tt: float) -> "WitnessPoint":
        return cls(z_real=point.z.real.tolist(), z_imag=point.z.imag.tolist(), norm=point.norm, h_TT=h_tt)


class SymmetryVerdict(BaseModel):
    """
    Outcome of the rigidity check on a sample of M.

    sphere means "consistent with a sphere at this sample size and tolerance",
    not a proof.
    """

    verdict: Literal["sphere", "not_sphere", "precondition_failed"]
    radius: Optional[float] = None
    h_TT_mean: float
    h_TT_spread: float = Field(..., description="(max - min) / |mean| of the sampled h_TT")
    is_constant: bool
    bounded: str
    search_radius: float = Field(..., description="radius of the box shared by sampling and the boundedness scan")
    sample_count: int = Field(..., description="requested random samples")
    axis_count: int = Field(0, description="axis points appended to the sample")
    seed: int
    tolerances: Dict[str, float]
    radius_check: Optional[float] = None
    witness: Optional[List[WitnessPoint]] = Field(None, description="lowest and highest sampled h_TT")
    radius_witness: Optional[List[WitnessPoint]] = Field(None, description="nearest and farthest point when h_TT is constant but |p| is not")
    reason: Optional[str] = None

    def as_output(self) -> Dict[str, Any]:
        """JSON layout: radius is always present, the optional diagnostics only when set."""
        data = self.model_dump(mode="json")
        for key in ("radius_check", "witness", "radius_witness", "reason"):
            if data[key] is None:
                del data[key]
        return data


def verify_symmetry(
    profile: RadialProfile,
    sample_count: int,
    seed: int,
    tolerances: Optional[Tolerances] = None,
    workers: Optional[int] = None,
    search_radius: Optional[float] = None,
) -> SymmetryVerdict:
    """
    Sample M (random tori plus the axis points), measure the h_TT spread and decide.

    The search box is sized from the profile unless search_radius fixes it.
    When the scan finds the profile bounded, sampling stays in the same box.

    Raises:
        EmptySurfaceError: If M has no sampled point
        ConvergenceError: If the sample cannot be completed
    """
    tol = tolerances or settings.tolerances
    workers = workers or settings.workers

    bounded = search_box(profile, search_radius, tolerances=tol)
    sample_radius = bounded.search_radius
    if bounded.status != "bounded":
        # still sample M to report the h_TT spread, in the widest box
        sample_radius = max(sample_radius, settings.max_search_radius)
    points = sample_surface(profile, sample_count, seed, tol, zero_fraction=0.1, search_radius=sample_radius)
    axes = axis_points(profile, tol)
    points += axes
    with ThreadPoolExecutor(max_workers=workers) as pool:
        values = np.array(list(pool.map(lambda q: characteristic_curvature_radial(profile, q, tol), points)))

    mean = float(np.mean(values))
    spread = float((values.max() - values.min()) / abs(mean)) if mean != 0 else float(np.ptp(values))
    is_constant = spread <= tol.constancy_tol
    common = dict(
        h_TT_mean=mean,
        h_TT_spread=spread,
        is_constant=is_constant,
        bounded=bounded.status,
        search_radius=bounded.search_radius,
        sample_count=sample_count,
        axis_count=len(axes),
        seed=seed,
        tolerances=tol.model_dump(),
    )
    logger.info(
        f"h_TT over {sample_count} samples and {len(axes)} axis points: "
        f"mean={mean:.12g} spread={spread:.3e} bounded={bounded.status} (box {bounded.search_radius:.6g})"
    )

    if bounded.status != "bounded":
        return SymmetryVerdict(verdict="precondition_failed", reason=bounded.status, **common)

    if is_constant:
        radius = 1.0 / mean
        norms = np.array([q.norm for q in points])
        radius_check = float(np.max(np.abs(norms - radius)))
        if radius_check <= tol.radius_tol:
            return SymmetryVerdict(verdict="sphere", radius=radius, radius_check=radius_check, **common)
        logger.warning(f"Constant h_TT but |p| strays {radius_check:.3e} from 1/h_TT")
        i, j = int(np.argmin(norms)), int(np.argmax(norms))
        return SymmetryVerdict(
            verdict="not_sphere",
            radius_check=radius_check,
            reason="radius_mismatch",
            radius_witness=[WitnessPoint.of(points[i], values[i]), WitnessPoint.of(points[j], values[j])],
            **common,
        )

    i, j = int(np.argmin(values)), int(np.argmax(values))
    return SymmetryVerdict(
        verdict="not_sphere",
        witness=[WitnessPoint.of(points[i], values[i]), WitnessPoint.of(points[j], values[j])],
        **common,
    )
