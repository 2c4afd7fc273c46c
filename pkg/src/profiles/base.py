"""
Abstract base class for radial defining functions f(z) = g(r), r_k = |z_k|².
"""

from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Any, Callable, Dict, Optional

import numpy as np

from src.config.settings import settings
from src.profiles.models import ProfileSpec
from src.utils.errors import DegenerateGradientError, DomainError, ProfileError


@dataclass(frozen=True, eq=False)
class ProfileEval:
    """Value, radial gradient (g_k) and radial Hessian (g_jk) at one radii vector."""

    g: float
    grad: np.ndarray
    hess: np.ndarray


def _partial(fun: Callable[[np.ndarray], Any], r: np.ndarray, k: int, h: float):
    """Second-order derivative along r_k; one-sided where r_k < h keeps every node in r >= 0."""
    step = np.zeros_like(r)
    step[k] = h
    if r[k] >= h:
        return (np.asarray(fun(r + step)) - np.asarray(fun(r - step))) / (2.0 * h)
    return (
        -3.0 * np.asarray(fun(r)) + 4.0 * np.asarray(fun(r + step)) - np.asarray(fun(r + 2.0 * step))
    ) / (2.0 * h)


class RadialProfile(ABC):
    """
    A Reinhardt defining function g of the radii.

    Profiles are immutable after construction. `value` is vectorized over
    leading axes; derivatives are evaluated one radii vector at a time,
    analytically or by central finite differences depending on
    `derivative_mode`.
    """

    family: str = ""

    def __init__(self, dim: int, derivative_mode: str = "analytic", h_fd: Optional[float] = None):
        if dim < 1:
            raise ProfileError(f"dim must be a positive integer, got {dim}")
        if derivative_mode not in ("analytic", "finite_difference"):
            raise ProfileError(f"Unknown derivative mode: {derivative_mode}")
        self.dim = int(dim)
        self.derivative_mode = derivative_mode
        self.h_fd = float(h_fd if h_fd is not None else settings.h_fd)

    @abstractmethod
    def value(self, r: np.ndarray) -> np.ndarray:
        """
        Evaluate g on radii.

        Args:
            r: Array of shape (..., dim)

        Returns:
            Array of shape (...)
        """
        pass

    @abstractmethod
    def _analytic_gradient(self, r: np.ndarray) -> np.ndarray:
        pass

    @abstractmethod
    def _analytic_hessian(self, r: np.ndarray) -> np.ndarray:
        pass

    @abstractmethod
    def params(self) -> Dict[str, Any]:
        """Family parameters in the JSON layout of ProfileSpec.params."""
        pass

    def to_spec(self) -> ProfileSpec:
        return ProfileSpec(
            dim=self.dim,
            family=self.family,
            params=self.params(),
            derivative_mode=self.derivative_mode,
            h_fd=self.h_fd if self.derivative_mode == "finite_difference" else None,
        )

    def _check_radii(self, r) -> np.ndarray:
        r = np.asarray(r, dtype=float)
        if r.shape != (self.dim,):
            raise DomainError(f"Expected {self.dim} radii, got shape {r.shape}")
        if np.any(r < 0):
            raise DomainError(f"Radii must be nonnegative, got {r}")
        return r

    def _fd_gradient(self, r: np.ndarray) -> np.ndarray:
        return np.array([_partial(self.value, r, k, self.h_fd) for k in range(self.dim)])

    def gradient(self, r) -> np.ndarray:
        """Radial gradient (∂g/∂r_k)."""
        r = self._check_radii(r)
        if self.derivative_mode == "analytic":
            return self._analytic_gradient(r)
        return self._fd_gradient(r)

    def evaluate(self, r) -> ProfileEval:
        """
        Evaluate g, its radial gradient and its radial Hessian.

        Args:
            r: Radii vector of length dim, componentwise >= 0

        Returns:
            ProfileEval with an exactly symmetric Hessian

        Raises:
            DomainError: If r has a negative component
            DegenerateGradientError: If g(r) = 0 and the radial gradient vanishes
        """
        r = self._check_radii(r)
        g = float(self.value(r))
        if self.derivative_mode == "analytic":
            grad = self._analytic_gradient(r)
            hess = self._analytic_hessian(r)
        else:
            grad = self._fd_gradient(r)
            hess = np.column_stack(
                [_partial(self._fd_gradient, r, k, self.h_fd) for k in range(self.dim)]
            )
        hess = 0.5 * (hess + hess.T)

        tol = settings.tolerances
        if abs(g) <= tol.surface_tol and np.linalg.norm(grad) < tol.grad_tol:
            raise DegenerateGradientError(f"Radial gradient vanishes on the zero set at r={r}")
        return ProfileEval(g=g, grad=grad, hess=hess)

    def __repr__(self) -> str:
        return f"{type(self).__name__}(dim={self.dim}, params={self.params()}, mode={self.derivative_mode})"
