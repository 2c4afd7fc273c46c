"""
Command-line entry point: python -m src.main --command NAME [options].

Exit codes: 0 ok, 1 input/parse/runtime error, 2 residual above report_tol,
3 not a sphere, 4 precondition failed (unbounded profile).
"""

import argparse
import sys
from typing import Dict, List, Optional

from loguru import logger
from pydantic import ValidationError

from src import __version__
from src.cli.commands import EXIT_ERROR, run
from src.cli.models import RunConfig
from src.config.settings import settings
from src.utils.errors import ConfigError, ReinhardtError
from src.utils.logger import setup_logger


class _Parser(argparse.ArgumentParser):
    """ArgumentParser that raises instead of exiting with status 2."""

    def error(self, message: str):
        raise ConfigError(message)


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="reinhardt-curvature", description="Curvature of Reinhardt boundaries")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    ap.add_argument("--command", required=True, help="curvature|scan|flow|verify|critical|ode")
    ap.add_argument("--profile", dest="profile_path", help="profile JSON file")
    ap.add_argument("--seed", type=int)
    ap.add_argument("--samples", type=int)
    ap.add_argument("--search-radius", dest="search_radius", type=float, help="fixed search box (default: sized from the profile)")
    ap.add_argument("--out", help="output file (stdout if omitted)")
    ap.add_argument("--format", help="json|csv|svg")
    ap.add_argument("--tol", action="append", default=[], metavar="KEY=VAL", help="tolerance override (repeatable)")
    ap.add_argument("--point", help='"r=...;theta=..." or "z=1+0j,0"')
    ap.add_argument("--t-end", dest="t_end", type=float)
    ap.add_argument("--dt", type=float)
    ap.add_argument("--method", help="closed_form|rk4|implicit_midpoint")
    ap.add_argument("--k", type=float)
    ap.add_argument("--s0", type=float)
    ap.add_argument("--f0", type=float)
    ap.add_argument("--fp0", type=float)
    ap.add_argument("--s-max", dest="s_max", type=float)
    ap.add_argument("--radius", type=float, help="sphere radius for --sphere-residual")
    ap.add_argument("--sphere-residual", dest="sphere_residual", action="store_true")
    return ap


def parse_tolerances(items: List[str]) -> Dict[str, float]:
    overrides: Dict[str, float] = {}
    for item in items:
        key, sep, value = item.partition("=")
        if not sep or not key.strip():
            raise ConfigError(f"--tol expects KEY=VAL, got {item!r}")
        try:
            overrides[key.strip()] = float(value)
        except ValueError:
            raise ConfigError(f"--tol {key} is not a number: {value!r}")
    return overrides


def parse_config(argv: Optional[List[str]] = None) -> RunConfig:
    """
    Parse arguments into a RunConfig.

    Raises:
        ConfigError: On unknown flags, malformed values or rejected combinations
    """
    args = build_parser().parse_args(argv)
    options = {key: value for key, value in vars(args).items() if value is not None and key != "tol"}
    if not options.get("sphere_residual"):
        options.pop("sphere_residual", None)
    options["tolerances"] = parse_tolerances(args.tol)
    try:
        config = RunConfig.model_validate(options)
        settings.tolerances.with_overrides(config.tolerances)
    except ValidationError as e:
        raise ConfigError(f"Invalid configuration: {e}")
    return config


def main(argv: Optional[List[str]] = None) -> int:
    """Run one command; returns the exit code."""
    setup_logger()
    try:
        config = parse_config(argv)
        return run(config)
    except ConfigError as e:
        logger.error(f"Configuration error: {e}")
    except ReinhardtError as e:
        logger.error(f"{type(e).__name__}: {e}")
    except (OSError, ValueError) as e:
        logger.error(f"Failed: {e}")
    return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
