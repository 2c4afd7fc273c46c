"""
Reinhardt defining functions g(r) and points of their zero sets.
"""

from src.profiles.base import ProfileEval, RadialProfile
from src.profiles.families import CylinderProfile, EllipsoidProfile, PolynomialProfile, SphereProfile
from src.profiles.factory import get_profile, load_profile, parse_profile, profile_hash
from src.profiles.models import ProfileSpec
from src.profiles.surface import (
    BoundednessVerdict,
    SurfacePoint,
    axis_points,
    complex_gradient,
    complex_hessian,
    complex_hessian_entry,
    eval_radii,
    is_bounded,
    project_to_surface,
    real_gradient,
    sample_surface,
    search_box,
)

__all__ = [
    "ProfileEval",
    "RadialProfile",
    "SphereProfile",
    "EllipsoidProfile",
    "CylinderProfile",
    "PolynomialProfile",
    "ProfileSpec",
    "get_profile",
    "load_profile",
    "parse_profile",
    "profile_hash",
    "BoundednessVerdict",
    "SurfacePoint",
    "axis_points",
    "complex_gradient",
    "complex_hessian",
    "complex_hessian_entry",
    "eval_radii",
    "is_bounded",
    "search_box",
    "project_to_surface",
    "real_gradient",
    "sample_surface",
]
