"""
Custom exceptions and retry controllers for iterative solvers.
Uses tenacity to re-run a solver from a modified start after a convergence failure.
"""

from typing import Any, List, Optional

from tenacity import (
    Retrying,
    retry_if_exception_type,
    stop_after_attempt,
)


class ReinhardtError(Exception):
    """Base exception for the reinhardt-curvature package."""

    pass


class ProfileError(ReinhardtError):
    """Raised when a profile specification is malformed or has invalid parameters."""

    pass


class DomainError(ReinhardtError):
    """Raised when radii leave the evaluation domain (negative components)."""

    pass


class DegenerateGradientError(ReinhardtError):
    """Raised when the defining function has a vanishing gradient."""

    pass


class NonTangentError(ReinhardtError):
    """Raised when a vector expected to be tangent to M is not."""

    pass


class ConvergenceError(ReinhardtError):
    """Raised when an iterative solver exhausts its budget."""

    pass


class EmptySurfaceError(ReinhardtError):
    """Raised when no point of M can be found."""

    pass


class StepFailureError(ReinhardtError):
    """Raised when an integrator step leaves the evaluation domain."""

    pass


class PreconditionError(ReinhardtError):
    """Raised when an operation requires a bounded domain and gets another one."""

    pass


class ConfigError(ReinhardtError):
    """Raised when command-line arguments or a run configuration are invalid."""

    pass


class OdeError(ReinhardtError):
    """Base class for ODE failures; keeps the trajectory accepted so far."""

    def __init__(self, message: str, last_state: Optional[Any] = None, states: Optional[List[Any]] = None):
        super().__init__(message)
        self.last_state = last_state
        self.states = list(states or [])


class SingularityError(OdeError):
    """Raised at s·f = 0 where the profile ODE is singular."""

    pass


class OdeDomainError(OdeError):
    """Raised when f + s·f'² becomes negative."""

    pass


def convergence_attempts(max_attempts: int = 3) -> Retrying:
    """
    Build a retry controller for solvers that may stall from a given start.

    Usage:
        for attempt in convergence_attempts():
            with attempt:
                k = attempt.retry_state.attempt_number
                ...

    Args:
        max_attempts: Total number of tries before the last error is re-raised

    Returns:
        tenacity Retrying instance (iterate it; one instance per solve)
    """
    return Retrying(
        retry=retry_if_exception_type(ConvergenceError),
        stop=stop_after_attempt(max_attempts),
        reraise=True,
    )
