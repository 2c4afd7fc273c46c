"""
Factory functions for creating profiles from specifications and JSON files.
"""

import hashlib
import json
from pathlib import Path
from typing import Union

from loguru import logger
from pydantic import ValidationError

from src.profiles.base import RadialProfile
from src.profiles.models import ProfileSpec
from src.utils.errors import ProfileError


def get_profile(spec: ProfileSpec) -> RadialProfile:
    """
    Create and return a profile instance.

    Args:
        spec: Validated profile specification

    Returns:
        RadialProfile instance

    Raises:
        ProfileError: If the family parameters are missing or invalid
    """
    params = dict(spec.params)
    mode = {"derivative_mode": spec.derivative_mode, "h_fd": spec.h_fd}

    try:
        if spec.family == "sphere":
            from src.profiles.families import SphereProfile
            profile = SphereProfile(spec.dim, R=params["R"], **mode)

        elif spec.family == "ellipsoid":
            from src.profiles.families import EllipsoidProfile
            profile = EllipsoidProfile(spec.dim, a=params["a"], **mode)

        elif spec.family == "cylinder":
            from src.profiles.families import CylinderProfile
            profile = CylinderProfile(
                spec.dim, R=params["R"], fixed_index=params.get("fixed_index", 0), **mode
            )

        else:
            from src.profiles.families import PolynomialProfile
            coefficients = params.get("coefficients", params)
            profile = PolynomialProfile(spec.dim, coefficients=coefficients, **mode)

    except KeyError as e:
        raise ProfileError(f"Missing parameter {e} for family '{spec.family}'")
    except (TypeError, ValueError) as e:
        raise ProfileError(f"Invalid parameters for family '{spec.family}': {e}")

    logger.debug(f"Built profile {profile}")
    return profile


def parse_profile(document: Union[str, bytes]) -> ProfileSpec:
    """Validate a JSON profile document."""
    try:
        return ProfileSpec.model_validate_json(document)
    except ValidationError as e:
        raise ProfileError(f"Invalid profile document: {e}")


def load_profile(path: Union[str, Path]) -> RadialProfile:
    """Read a profile JSON file and build the profile."""
    path = Path(path)
    try:
        document = path.read_text(encoding="utf-8")
    except OSError as e:
        raise ProfileError(f"Cannot read profile {path}: {e}")
    spec = parse_profile(document)
    logger.info(f"Loaded {spec.family} profile (dim={spec.dim}) from {path}")
    return get_profile(spec)


def profile_hash(profile: RadialProfile) -> str:
    """SHA-256 of the canonical JSON form of the profile specification."""
    canonical = json.dumps(profile.to_spec().model_dump(mode="json"), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()
