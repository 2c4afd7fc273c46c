import json

import numpy as np
import pytest

from src.profiles import (
    CylinderProfile,
    EllipsoidProfile,
    PolynomialProfile,
    SphereProfile,
    sample_surface,
)


def random_polynomial(dim: int, seed: int, derivative_mode: str = "analytic") -> PolynomialProfile:
    """
    Bounded star-shaped profile g = Σ c_k r_k + Σ d_k r_k² + e r_1 r_2 - 1, positive coefficients.
    """
    rng = np.random.default_rng(seed)
    coefficients = {}
    for k in range(dim):
        alpha = [0] * dim
        alpha[k] = 1
        coefficients[tuple(alpha)] = float(rng.uniform(0.5, 2.0))
        alpha[k] = 2
        coefficients[tuple(alpha)] = float(rng.uniform(0.05, 0.5))
    if dim >= 2:
        alpha = [0] * dim
        alpha[0] = alpha[1] = 1
        coefficients[tuple(alpha)] = float(rng.uniform(0.0, 0.3))
    coefficients[tuple([0] * dim)] = -1.0
    return PolynomialProfile(dim, coefficients=coefficients, derivative_mode=derivative_mode)


def builtin_profiles():
    """Named analytic profiles covering every family and dimension 2..4."""
    return [
        ("sphere-2", SphereProfile(2, R=1.0)),
        ("sphere-3", SphereProfile(3, R=3.0)),
        ("ellipsoid-12", EllipsoidProfile(2, a=[1.0, 2.0])),
        ("ellipsoid-123", EllipsoidProfile(3, a=[1.0, 2.0, 3.0])),
        ("poly-2", random_polynomial(2, seed=1)),
        ("poly-3", random_polynomial(3, seed=2)),
        ("poly-4", random_polynomial(4, seed=3)),
    ]


@pytest.fixture
def sphere():
    return SphereProfile(2, R=1.0)


@pytest.fixture
def ellipsoid():
    return EllipsoidProfile(2, a=[1.0, 2.0])


@pytest.fixture
def cylinder():
    return CylinderProfile(2, R=1.0)


@pytest.fixture
def polynomial():
    return random_polynomial(3, seed=7)


@pytest.fixture
def surface_points():
    def make(profile, count=20, seed=0, zero_fraction=0.2):
        return sample_surface(profile, count, seed, zero_fraction=zero_fraction)

    return make


@pytest.fixture
def profile_file(tmp_path):
    def write(document, name="profile.json"):
        path = tmp_path / name
        path.write_text(document if isinstance(document, str) else json.dumps(document), encoding="utf-8")
        return path

    return write
