"""
Built-in profile families: sphere, ellipsoid, cylinder and polynomials in the radii.
"""

from typing import Any, Dict, Mapping, Sequence, Tuple

import numpy as np

from src.profiles.base import RadialProfile
from src.utils.errors import ProfileError


class SphereProfile(RadialProfile):
    """g(r) = r_1 + ... + r_{n+1} - R²."""

    family = "sphere"

    def __init__(self, dim: int, R: float, **kwargs):
        super().__init__(dim, **kwargs)
        if not R > 0:
            raise ProfileError(f"Sphere radius must be positive, got {R}")
        self.R = float(R)

    def value(self, r):
        return np.sum(r, axis=-1) - self.R**2

    def _analytic_gradient(self, r):
        return np.ones(self.dim)

    def _analytic_hessian(self, r):
        return np.zeros((self.dim, self.dim))

    def params(self) -> Dict[str, Any]:
        return {"R": self.R}


class EllipsoidProfile(RadialProfile):
    """g(r) = r_1/a_1² + ... + r_{n+1}/a_{n+1}² - 1."""

    family = "ellipsoid"

    def __init__(self, dim: int, a: Sequence[float], **kwargs):
        super().__init__(dim, **kwargs)
        a = np.asarray(a, dtype=float)
        if a.shape != (dim,):
            raise ProfileError(f"Ellipsoid needs {dim} semiaxes, got {a.tolist()}")
        if np.any(a <= 0):
            raise ProfileError(f"Semiaxes must be positive, got {a.tolist()}")
        self.a = a
        self._weights = 1.0 / a**2

    def value(self, r):
        return np.asarray(r) @ self._weights - 1.0

    def _analytic_gradient(self, r):
        return self._weights.copy()

    def _analytic_hessian(self, r):
        return np.zeros((self.dim, self.dim))

    def params(self) -> Dict[str, Any]:
        return {"a": self.a.tolist()}


class CylinderProfile(RadialProfile):
    """g(r) = r_i - R² for one fixed coordinate i (unbounded for dim >= 2)."""

    family = "cylinder"

    def __init__(self, dim: int, R: float, fixed_index: int = 0, **kwargs):
        super().__init__(dim, **kwargs)
        if not R > 0:
            raise ProfileError(f"Cylinder radius must be positive, got {R}")
        if not 0 <= fixed_index < dim:
            raise ProfileError(f"fixed_index must lie in [0, {dim}), got {fixed_index}")
        self.R = float(R)
        self.fixed_index = int(fixed_index)

    def value(self, r):
        return np.asarray(r)[..., self.fixed_index] - self.R**2

    def _analytic_gradient(self, r):
        grad = np.zeros(self.dim)
        grad[self.fixed_index] = 1.0
        return grad

    def _analytic_hessian(self, r):
        return np.zeros((self.dim, self.dim))

    def params(self) -> Dict[str, Any]:
        return {"R": self.R, "fixed_index": self.fixed_index}


def parse_multi_index(key: str, dim: int) -> Tuple[int, ...]:
    """Parse "e1,e2,...,e(n+1)" into a tuple of nonnegative exponents."""
    try:
        exponents = tuple(int(part) for part in key.split(","))
    except ValueError:
        raise ProfileError(f"Malformed multi-index: {key!r}")
    if len(exponents) != dim or any(e < 0 for e in exponents):
        raise ProfileError(f"Multi-index {key!r} must have {dim} nonnegative entries")
    return exponents


class PolynomialProfile(RadialProfile):
    """g(r) = Σ_α c_α r^α with coefficients stored by multi-index in r."""

    family = "polynomial"

    def __init__(self, dim: int, coefficients: Mapping[Any, float], **kwargs):
        super().__init__(dim, **kwargs)
        if not coefficients:
            raise ProfileError("Polynomial coefficient table is empty")

        table: Dict[Tuple[int, ...], float] = {}
        for key, coef in coefficients.items():
            alpha = parse_multi_index(key, dim) if isinstance(key, str) else tuple(int(e) for e in key)
            if len(alpha) != dim or any(e < 0 for e in alpha):
                raise ProfileError(f"Multi-index {key!r} must have {dim} nonnegative entries")
            table[alpha] = table.get(alpha, 0.0) + float(coef)

        self.coefficients = dict(sorted(table.items()))
        self._exponents = np.array(list(self.coefficients.keys()), dtype=int)
        self._coefs = np.array(list(self.coefficients.values()), dtype=float)

    def _monomial_sum(self, r, coefs, exponents):
        r = np.asarray(r, dtype=float)
        terms = np.prod(r[..., None, :] ** exponents, axis=-1)
        return terms @ coefs

    def _differentiate(self, coefs, exponents, k):
        coefs = coefs * exponents[:, k]
        exponents = exponents.copy()
        exponents[:, k] = np.maximum(exponents[:, k] - 1, 0)
        return coefs, exponents

    def value(self, r):
        return self._monomial_sum(r, self._coefs, self._exponents)

    def _analytic_gradient(self, r):
        grad = np.empty(self.dim)
        for k in range(self.dim):
            coefs, exponents = self._differentiate(self._coefs, self._exponents, k)
            grad[k] = self._monomial_sum(r, coefs, exponents)
        return grad

    def _analytic_hessian(self, r):
        hess = np.empty((self.dim, self.dim))
        for j in range(self.dim):
            cj, ej = self._differentiate(self._coefs, self._exponents, j)
            for k in range(j, self.dim):
                coefs, exponents = self._differentiate(cj, ej, k)
                hess[j, k] = hess[k, j] = self._monomial_sum(r, coefs, exponents)
        return hess

    def params(self) -> Dict[str, Any]:
        return {",".join(str(e) for e in alpha): c for alpha, c in self.coefficients.items()}
