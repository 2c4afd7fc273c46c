from src.ode.hl_ode import integrate_profile, ode_rhs, profile_rows, rkf45_step, sphere_residual
from src.ode.models import OdeProfile, OdeState, StepControl

__all__ = [
    "OdeProfile",
    "OdeState",
    "StepControl",
    "integrate_profile",
    "ode_rhs",
    "profile_rows",
    "rkf45_step",
    "sphere_residual",
]
