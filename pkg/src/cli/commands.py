"""
Command handlers. Each takes a validated RunConfig, writes its output and
returns the process exit code.
"""

import re
from typing import Callable, Dict, Optional, Tuple

import numpy as np
from loguru import logger

from src.cli.models import RunConfig
from src.cli.output import header, scatter_panels, write_csv, write_json, write_svg
from src.config.settings import Tolerances, settings
from src.geometry.report import curvature_report, report_columns, report_row, scan_reports
from src.hamiltonian.conservation import conservation_report, trajectory_columns, trajectory_rows
from src.hamiltonian.flow import flow_closed_form, flow_closed_form_trajectory
from src.hamiltonian.integrators import flow_numeric
from src.ode.hl_ode import integrate_profile, profile_rows, sphere_residual
from src.profiles.base import RadialProfile
from src.profiles.factory import load_profile, profile_hash
from src.profiles.surface import SurfacePoint, eval_radii, project_to_surface, sample_surface
from src.symmetry.critical import find_critical_points
from src.symmetry.verdict import verify_symmetry
from src.utils.errors import ConfigError, PreconditionError

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_RESIDUAL = 2
EXIT_NOT_SPHERE = 3
EXIT_PRECONDITION = 4

NUMERIC_TORUS_BUDGET = 1e-7

_POINT_PART = re.compile(r"^\s*(r|theta|z)\s*=\s*(.+?)\s*$")


def parse_point(text: str, dim: int) -> np.ndarray:
    """
    Parse "r=r_1,...;theta=t_1,..." (radii r_k = |z_k|², phases default 0) or "z=1+0j,0".

    Raises:
        ConfigError: On malformed text or a wrong number of components
    """
    fields: Dict[str, str] = {}
    for part in text.split(";"):
        if not part.strip():
            continue
        match = _POINT_PART.match(part)
        if not match:
            raise ConfigError(f"Malformed --point component: {part!r}")
        fields[match.group(1)] = match.group(2)

    def numbers(key: str, cast: Callable) -> np.ndarray:
        try:
            values = [cast(v.strip().replace(" ", "")) for v in fields[key].split(",")]
        except ValueError:
            raise ConfigError(f"Cannot parse --point {key}={fields[key]!r}")
        if len(values) != dim:
            raise ConfigError(f"--point {key} needs {dim} components, got {len(values)}")
        return np.array(values)

    if "z" in fields:
        if {"r", "theta"} & fields.keys():
            raise ConfigError("--point takes either z=... or r=...;theta=..., not both")
        return numbers("z", complex).astype(complex)
    if "r" not in fields:
        raise ConfigError("--point needs r=... or z=...")
    r = numbers("r", float).astype(float)
    if np.any(r < 0):
        raise ConfigError("--point radii must be nonnegative")
    theta = numbers("theta", float).astype(float) if "theta" in fields else np.zeros(dim)
    return np.sqrt(r) * np.exp(1j * theta)


def _context(config: RunConfig) -> Tuple[RadialProfile, Tolerances, Dict]:
    tolerances = settings.tolerances.with_overrides(config.tolerances)
    profile = load_profile(config.profile_path)
    return profile, tolerances, header(config, tolerances, profile_hash(profile))


def _resolve_point(config: RunConfig, profile: RadialProfile, tolerances: Tolerances) -> SurfacePoint:
    """The --point on M (projected along its ray if off M), else the first sampled point."""
    if config.point is None:
        return sample_surface(profile, 1, config.seed, tolerances, search_radius=config.search_radius)[0]
    point = SurfacePoint.from_z(profile, parse_point(config.point, profile.dim))
    if point.residual > tolerances.surface_tol:
        logger.info(f"--point is off M (|g| = {point.residual:.3e}); projecting along its ray")
        point = project_to_surface(profile, point.z, tolerances)
    return point


def _point_json(point: SurfacePoint) -> Dict:
    return {"z_real": point.z.real.tolist(), "z_imag": point.z.imag.tolist(), "radii": point.r.tolist()}


def cmd_curvature(config: RunConfig) -> int:
    profile, tolerances, head = _context(config)
    point = _resolve_point(config, profile, tolerances)
    report = curvature_report(profile, point, tolerances)
    breaches = report.breaches(tolerances.report_tol)
    document = {"point": _point_json(point), "report": report.model_dump(mode="json"), "breaches": breaches}

    if config.output_format == "csv":
        write_csv(report_columns(profile.dim), [report_row(0, point, report)], head, config.out)
    elif config.output_format == "svg":
        raise ConfigError("curvature has no SVG output")
    else:
        write_json(document, head, config.out)

    if breaches:
        logger.error(f"Residuals above report_tol={tolerances.report_tol:g}: {breaches}")
        return EXIT_RESIDUAL
    return EXIT_OK


def cmd_scan(config: RunConfig) -> int:
    profile, tolerances, head = _context(config)
    points = sample_surface(
        profile, config.samples, config.seed, tolerances, zero_fraction=0.1, search_radius=config.search_radius
    )
    reports = scan_reports(profile, points, tolerances)
    breaches = sorted({name for rep in reports for name in rep.breaches(tolerances.report_tol)})

    if config.output_format == "svg":
        h_tt = [rep.h_TT for rep in reports]
        norms = [q.norm for q in points]
        draw = scatter_panels(
            [
                {"x": list(range(len(h_tt))), "y": h_tt, "xlabel": "sample index", "ylabel": "h(T,T)"},
                {"x": h_tt, "y": norms, "xlabel": "h(T,T)", "ylabel": "|p|"},
            ]
        )
        write_svg(draw, head, config.out)
    elif config.output_format == "json":
        write_json(
            {
                "points": [_point_json(q) for q in points],
                "reports": [rep.model_dump(mode="json") for rep in reports],
                "breaches": breaches,
            },
            head,
            config.out,
        )
    else:
        rows = [report_row(i, q, rep) for i, (q, rep) in enumerate(zip(points, reports))]
        write_csv(report_columns(profile.dim), rows, head, config.out)

    logger.info(f"Scanned {len(points)} points")
    if breaches:
        logger.error(f"Residuals above report_tol={tolerances.report_tol:g}: {breaches}")
        return EXIT_RESIDUAL
    return EXIT_OK


def cmd_flow(config: RunConfig) -> int:
    profile, tolerances, head = _context(config)
    z0 = _resolve_point(config, profile, tolerances).z

    if config.method == "closed_form":
        trajectory = flow_closed_form_trajectory(profile, z0, config.t_end, config.dt, tolerances=tolerances)
        budget = tolerances.torus_tol
    else:
        trajectory = flow_numeric(profile, z0, config.t_end, config.dt, config.method, tolerances=tolerances)
        budget = NUMERIC_TORUS_BUDGET
    conservation = conservation_report(profile, trajectory, tolerances, torus_budget=budget)
    endpoint_gap = float(np.max(np.abs(trajectory.end - flow_closed_form(profile, z0, trajectory.t[-1]))))

    if config.output_format == "json":
        write_json(
            {
                "conservation": conservation.model_dump(mode="json"),
                "endpoint_gap": endpoint_gap,
                "closure_gap": float(np.max(np.abs(trajectory.end - z0))),
                "start": _point_json(SurfacePoint.from_z(profile, z0)),
                "step": trajectory.step,
            },
            head,
            config.out,
        )
    elif config.output_format == "svg":
        radii = eval_radii(trajectory.z)
        draw = scatter_panels(
            [
                {
                    "x": trajectory.t.tolist(),
                    "y": {f"|z_{k + 1}|": np.sqrt(radii[:, k]).tolist() for k in range(profile.dim)},
                    "xlabel": "t",
                    "ylabel": "|z_k(t)|",
                    "style": "line",
                },
                {
                    "x": trajectory.t.tolist(),
                    "y": {"Re z_1": trajectory.z[:, 0].real.tolist(), "Im z_1": trajectory.z[:, 0].imag.tolist()},
                    "xlabel": "t",
                    "ylabel": "z_1(t)",
                    "style": "line",
                },
            ]
        )
        write_svg(draw, head, config.out)
    else:
        write_csv(trajectory_columns(profile.dim), trajectory_rows(profile, trajectory, tolerances), head, config.out)

    logger.info(f"Flow ({config.method}) drift: {conservation.drift}; endpoint gap {endpoint_gap:.3e}")
    return EXIT_OK


def cmd_verify(config: RunConfig) -> int:
    profile, tolerances, head = _context(config)
    if config.output_format != "json":
        raise ConfigError("verify writes JSON only")
    verdict = verify_symmetry(profile, config.samples, config.seed, tolerances, search_radius=config.search_radius)
    write_json(verdict.as_output(), head, config.out)

    if verdict.verdict == "sphere":
        logger.info(f"Consistent with a sphere of radius {verdict.radius:.12g}")
        return EXIT_OK
    if verdict.verdict == "not_sphere":
        logger.info(f"Not a sphere: h_TT spread {verdict.h_TT_spread:.3e}")
        return EXIT_NOT_SPHERE
    logger.error(f"Precondition failed: {verdict.reason}")
    return EXIT_PRECONDITION


def cmd_critical(config: RunConfig) -> int:
    profile, tolerances, head = _context(config)
    if config.output_format != "json":
        raise ConfigError("critical writes JSON only")
    try:
        results = find_critical_points(profile, tolerances, seed=config.seed, search_radius=config.search_radius)
    except PreconditionError as e:
        logger.error(str(e))
        write_json({"critical_points": [], "error": str(e)}, head, config.out)
        return EXIT_PRECONDITION
    write_json({"critical_points": [cp.to_dict() for cp in results]}, head, config.out)
    return EXIT_OK


def cmd_ode(config: RunConfig) -> int:
    tolerances = settings.tolerances.with_overrides(config.tolerances)
    head = header(config, tolerances, None)

    if config.sphere_residual:
        residual = sphere_residual(config.k, config.radius)
        write_json({"sphere_residual": residual, "k": config.k, "radius": config.radius}, head, config.out)
        return EXIT_OK

    s_max: Optional[float] = config.s_max
    if s_max is None:
        # closes past the sphere crossing s = 1/k² of the same curvature
        s_max = max(2.0 / config.k**2, 2.0 * config.s0)
    profile = integrate_profile(config.k, config.s0, config.f0, config.fp0, s_max)

    if config.output_format == "json":
        write_json(
            {
                "termination": profile.termination,
                "crossing": profile.crossing,
                "states": len(profile.states),
                "rejected_steps": profile.rejected_steps,
            },
            head,
            config.out,
        )
    elif config.output_format == "svg":
        rows = np.array(profile_rows(profile))
        draw = scatter_panels(
            [
                {
                    "x": rows[:, 0].tolist(),
                    "y": {"f": rows[:, 1].tolist(), "f'": rows[:, 2].tolist()},
                    "xlabel": "s",
                    "ylabel": "profile",
                    "style": "line",
                }
            ]
        )
        write_svg(draw, head, config.out)
    else:
        write_csv(["s", "f", "fp"], profile_rows(profile), head, config.out)
    return EXIT_OK


COMMANDS: Dict[str, Callable[[RunConfig], int]] = {
    "curvature": cmd_curvature,
    "scan": cmd_scan,
    "flow": cmd_flow,
    "verify": cmd_verify,
    "critical": cmd_critical,
    "ode": cmd_ode,
}


def run(config: RunConfig) -> int:
    """Dispatch to the command handler."""
    logger.info(f"Running '{config.command}' (seed={config.seed}, format={config.output_format})")
    return COMMANDS[config.command](config)
