"""
Per-point curvature report with the dual-route residuals.
"""

from concurrent.futures import ThreadPoolExecutor
from typing import Dict, List, Optional, Sequence

import numpy as np
from loguru import logger
from pydantic import BaseModel, Field

from src.config.settings import Tolerances, settings
from src.geometry.curvature import (
    characteristic_curvature_oracle,
    characteristic_curvature_radial,
    mean_curvature,
)
from src.geometry.levi import levi_curvatures_det, levi_curvatures_sym, levi_eigenvalues
from src.profiles.base import RadialProfile
from src.profiles.surface import PointLike, SurfacePoint, as_z, eval_radii


class CurvatureReport(BaseModel):
    """Curvature invariants of M at one point."""

    h_TT: float
    h_TT_oracle: float
    levi_eigenvalues: List[float]
    levi_det: List[float]
    levi_sym: List[float]
    mean_curvature: float
    relation_residual: float = Field(..., description="|H - (2n L^1 + h_TT)/(2n+1)|")
    route_residuals: Dict[str, float] = Field(default_factory=dict)
    levi_route_factor: Optional[float] = Field(
        None, description="L^1 (determinants) / L^1 (eigenvalues); 1 when the routes agree"
    )

    def breaches(self, tolerance: float) -> List[str]:
        """Names of residuals above tolerance."""
        out = [name for name, value in self.route_residuals.items() if value > tolerance]
        if self.relation_residual > tolerance:
            out.append("relation_residual")
        return out


def curvature_report(profile: RadialProfile, q: PointLike, tolerances: Optional[Tolerances] = None) -> CurvatureReport:
    h_tt = characteristic_curvature_radial(profile, q, tolerances)
    h_tt_oracle = characteristic_curvature_oracle(profile, q, tolerances)
    eigs = levi_eigenvalues(profile, q, tolerances)
    levi_sym = levi_curvatures_sym(profile, q, tolerances)
    levi_det = levi_curvatures_det(profile, q, tolerances)
    H = mean_curvature(profile, q, tolerances)

    n = profile.dim - 1
    levi_mean = levi_sym[0] if n else 0.0
    relation = abs(H - (2 * n * levi_mean + h_tt) / (2 * n + 1))

    factor = None
    if n and abs(levi_sym[0]) > 0:
        factor = float(levi_det[0] / levi_sym[0])

    return CurvatureReport(
        h_TT=h_tt,
        h_TT_oracle=h_tt_oracle,
        levi_eigenvalues=eigs.tolist(),
        levi_det=levi_det.tolist(),
        levi_sym=levi_sym.tolist(),
        mean_curvature=H,
        relation_residual=relation,
        route_residuals={
            "h_TT": abs(h_tt - h_tt_oracle),
            "levi": float(np.max(np.abs(levi_det - levi_sym))) if n else 0.0,
        },
        levi_route_factor=factor,
    )


def scan_reports(
    profile: RadialProfile,
    points: Sequence[SurfacePoint],
    tolerances: Optional[Tolerances] = None,
    workers: Optional[int] = None,
) -> List[CurvatureReport]:
    """Reports for many points, in input order."""
    workers = workers or settings.workers
    with ThreadPoolExecutor(max_workers=workers) as pool:
        reports = list(pool.map(lambda q: curvature_report(profile, q, tolerances), points))
    logger.debug(f"Computed {len(reports)} curvature reports with {workers} workers")
    return reports


def report_columns(dim: int) -> List[str]:
    """CSV header of a curvature scan."""
    n = dim - 1
    idx = range(1, dim + 1)
    lev = range(1, n + 1)
    return (
        ["index"]
        + [f"x_{k}" for k in idx]
        + [f"y_{k}" for k in idx]
        + [f"r_{k}" for k in idx]
        + ["h_TT", "h_TT_oracle"]
        + [f"lambda_{k}" for k in lev]
        + [f"L_det_{k}" for k in lev]
        + [f"L_sym_{k}" for k in lev]
        + ["mean_curvature", "relation_residual"]
    )


def report_row(index: int, q: PointLike, report: CurvatureReport) -> List[float]:
    z = as_z(q)
    return (
        [index]
        + z.real.tolist()
        + z.imag.tolist()
        + eval_radii(z).tolist()
        + [report.h_TT, report.h_TT_oracle]
        + report.levi_eigenvalues
        + report.levi_det
        + report.levi_sym
        + [report.mean_curvature, report.relation_residual]
    )
