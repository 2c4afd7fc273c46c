"""
Adaptive integration of the constant Levi-curvature profile ODE in ℂ².

The system y = (f, f') is advanced with the Runge-Kutta-Fehlberg 4(5) pair,
propagating the 4th order solution; a sign change of f inside an accepted
step is located by bisection on the step length.
"""

from typing import List, Optional, Tuple

import numpy as np
from loguru import logger
from scipy.optimize import bisect

from src.ode.models import OdeProfile, OdeState, StepControl
from src.utils.errors import OdeDomainError, OdeError, SingularityError

DOMAIN_GUARD = 1e-12

# Fehlberg tableau
_C = np.array([0.0, 1 / 4, 3 / 8, 12 / 13, 1.0, 1 / 2])
_A = [
    [],
    [1 / 4],
    [3 / 32, 9 / 32],
    [1932 / 2197, -7200 / 2197, 7296 / 2197],
    [439 / 216, -8.0, 3680 / 513, -845 / 4104],
    [-8 / 27, 2.0, -3544 / 2565, 1859 / 4104, -11 / 40],
]
_B4 = np.array([25 / 216, 0.0, 1408 / 2565, 2197 / 4104, -1 / 5, 0.0])
# 5th minus 4th order weights
_TR = np.array([1 / 360, 0.0, -128 / 4275, -2197 / 75240, 1 / 50, 2 / 55])


def ode_rhs(state: OdeState) -> float:
    """
    f'' = (s f'² - k (f + s f'²)^{3/2} - f f') / (s f).

    Raises:
        SingularityError: At s·f = 0
        OdeDomainError: If f + s f'² < 0 beyond the guard band
    """
    s, f, fp, k = state.s, state.f, state.fp, state.k
    if s * f == 0.0:
        raise SingularityError(f"Singular point s·f = 0 at s={s:.17g}, f={f:.17g}", last_state=state)
    base = state.domain_value
    if base < 0.0:
        if base < -DOMAIN_GUARD:
            raise OdeDomainError(f"f + s f'² = {base:.3e} < 0 at s={s:.17g}", last_state=state)
        base = 0.0
    return (s * fp**2 - k * base**1.5 - f * fp) / (s * f)


def _field(k: float, s: float, y: np.ndarray) -> np.ndarray:
    return np.array([y[1], ode_rhs(OdeState(s=s, f=y[0], fp=y[1], k=k))])


def rkf45_step(k: float, s: float, y: np.ndarray, h: float) -> Tuple[np.ndarray, np.ndarray]:
    """One Fehlberg step; returns the 4th order update and the local error vector."""
    stages = []
    for i in range(6):
        yi = y + h * sum(a * kj for a, kj in zip(_A[i], stages)) if i else y
        stages.append(_field(k, s + _C[i] * h, yi))
    K = np.array(stages)
    return y + h * (_B4 @ K), h * (_TR @ K)


def integrate_profile(
    k: float,
    s0: float,
    f0: float,
    fp0: float,
    s_max: float,
    step_control: Optional[StepControl] = None,
) -> OdeProfile:
    """
    Integrate from (s0, f0, f0') until s = s_max or f crosses 0.

    Steps raising inside a stage are rejected and halved; below h_min the
    stage error is re-raised with the accepted states attached.

    Raises:
        ValueError: If the initial data violate s0 > 0, f0 > 0, k > 0, s_max > s0
            or f0 + s0 f0'² >= 0
        SingularityError, OdeDomainError: If the step size underflows h_min
        OdeError: If max_steps is exhausted
    """
    ctl = step_control or StepControl()
    if not (s0 > 0 and f0 > 0 and k > 0):
        raise ValueError(f"Need s0 > 0, f0 > 0 and k > 0, got s0={s0}, f0={f0}, k={k}")
    if not s_max > s0:
        raise ValueError(f"s_max must exceed s0, got {s_max} <= {s0}")
    if f0 + s0 * fp0**2 < 0:
        raise ValueError("Initial data outside the domain f + s f'² >= 0")

    states: List[OdeState] = [OdeState(s=s0, f=f0, fp=fp0, k=k)]
    s, y = s0, np.array([f0, fp0], dtype=float)
    h = min(ctl.h_init, s_max - s0)
    rejected = 0

    for _ in range(ctl.max_steps):
        h = min(h, s_max - s)
        if ctl.h_max is not None:
            h = min(h, ctl.h_max)
        try:
            y_new, err_vec = rkf45_step(k, s, y, h)
            if y_new[0] + (s + h) * y_new[1] ** 2 < -DOMAIN_GUARD:
                raise OdeDomainError("Step leaves the domain f + s f'² >= 0", last_state=states[-1])
        except (SingularityError, OdeDomainError) as e:
            rejected += 1
            h *= 0.5
            logger.debug(f"Rejected step at s={s:.17g}: {e}; h -> {h:.3e}")
            if h < ctl.h_min:
                e.last_state, e.states = states[-1], list(states)
                raise
            continue

        scale = ctl.atol + ctl.rtol * np.maximum(np.abs(y), np.abs(y_new))
        err = float(np.max(np.abs(err_vec) / scale))
        factor = 5.0 if err == 0.0 else min(5.0, max(0.2, 0.9 * err ** (-0.2)))

        if err > 1.0:
            rejected += 1
            h *= factor
            if h < ctl.h_min:
                raise OdeError(f"Step size underflow at s={s:.17g}", last_state=states[-1], states=states)
            continue

        if y_new[0] <= 0.0:
            h_cross = bisect(lambda t: rkf45_step(k, s, y, t)[0][0], 0.0, h, xtol=ctl.crossing_tol)
            y_cross = rkf45_step(k, s, y, h_cross)[0]
            crossing = s + h_cross
            states.append(OdeState(s=crossing, f=float(y_cross[0]), fp=float(y_cross[1]), k=k))
            logger.info(f"Profile closes at s={crossing:.12g} after {len(states)} states")
            return OdeProfile(states=states, termination="crossing", crossing=crossing, rejected_steps=rejected)

        s_next = s + h
        s, y = (s_max if s_max - s_next <= 1e-15 * max(1.0, s_max) else s_next), y_new
        states.append(OdeState(s=s, f=float(y[0]), fp=float(y[1]), k=k))
        if s >= s_max:
            return OdeProfile(states=states, termination="s_max", rejected_steps=rejected)
        h *= factor

    raise OdeError(f"No termination within {ctl.max_steps} steps", last_state=states[-1], states=states)


def sphere_residual(k: float, R: float, sample_count: int = 100) -> float:
    """
    max over s in (0, R²) of the ODE residual of the linear profile f = R² - s.

    Equals R²·|1 - kR|, zero exactly when k = 1/R.
    """
    if not (k > 0 and R > 0):
        raise ValueError(f"k and R must be positive, got k={k}, R={R}")
    s = np.linspace(0.0, R**2, sample_count + 2)[1:-1]
    f = R**2 - s
    fp = -1.0
    fpp = 0.0
    lhs = s * f * fpp
    rhs = s * fp**2 - k * (f + s * fp**2) ** 1.5 - f * fp
    return float(np.max(np.abs(lhs - rhs)))


def profile_rows(profile: OdeProfile) -> List[List[float]]:
    """CSV rows (s, f, f')."""
    return [[st.s, st.f, st.fp] for st in profile.states]
