import numpy as np
import pytest

from src.profiles import (
    CylinderProfile,
    EllipsoidProfile,
    SphereProfile,
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
)
from src.profiles.surface import complexify, realify
from src.utils.errors import ConvergenceError, DegenerateGradientError, EmptySurfaceError
from tests.conftest import random_polynomial


class _PositiveProfile(SphereProfile):
    """g = r_1 + ... + r_n + 1, so M is empty."""

    def __init__(self, dim):
        super().__init__(dim, R=1.0)

    def value(self, r):
        return np.sum(r, axis=-1) + 1.0


def test_eval_radii():
    np.testing.assert_allclose(eval_radii([1 + 1j, 2j, 0]), [2.0, 4.0, 0.0])


def test_realify_layout():
    np.testing.assert_array_equal(realify([1 + 2j, 3 - 4j]), [1.0, 3.0, 2.0, -4.0])
    w = np.array([0.5 - 1j, 2 + 0.25j, -1j])
    np.testing.assert_array_equal(complexify(realify(w)), w)


def test_real_gradient_is_twice_complex_norm(polynomial, surface_points):
    for q in surface_points(polynomial, count=10):
        grad = real_gradient(polynomial, q)
        assert np.linalg.norm(grad) == pytest.approx(2.0 * np.linalg.norm(complex_gradient(polynomial, q)), rel=1e-14)
        assert np.linalg.norm(grad) == pytest.approx(2.0 * q.grad_norm_complex, rel=1e-14)


def test_real_gradient_degenerate_at_origin(sphere):
    with pytest.raises(DegenerateGradientError):
        real_gradient(sphere, [0, 0])


def test_complex_hessian_sphere_is_identity(sphere):
    np.testing.assert_allclose(complex_hessian(sphere, [0.6, 0.8j]), np.eye(2))


def test_complex_hessian_hermitian(polynomial, surface_points):
    for q in surface_points(polynomial, count=5):
        H = complex_hessian(polynomial, q)
        np.testing.assert_allclose(H, H.conj().T, atol=1e-14)


def test_complex_hessian_entry_bounds(sphere):
    assert complex_hessian_entry(sphere, [1, 0], 0, 0) == pytest.approx(1.0)
    with pytest.raises(IndexError):
        complex_hessian_entry(sphere, [1, 0], 0, 2)


def test_projection_keeps_phases():
    p = EllipsoidProfile(3, a=[1.0, 2.0, 3.0])
    z = np.array([0.3 * np.exp(0.4j), 2.0 * np.exp(-1.1j), 0.5j])
    q = project_to_surface(p, z)
    assert q.residual <= 1e-10
    np.testing.assert_allclose(np.angle(q.z), np.angle(z), atol=1e-14)
    ratio = np.abs(q.z) / np.abs(z)
    np.testing.assert_allclose(ratio, ratio[0])


def test_projection_of_origin_fails(sphere):
    with pytest.raises(ConvergenceError):
        project_to_surface(sphere, [0, 0])


def test_projection_along_cylinder_axis_fails(cylinder):
    with pytest.raises(ConvergenceError):
        project_to_surface(cylinder, [0, 1])


@pytest.mark.parametrize("seed", [0, 1, 2])
def test_sampling_is_seeded(seed):
    p = random_polynomial(3, seed=9)
    a = sample_surface(p, 15, seed)
    b = sample_surface(p, 15, seed)
    for qa, qb in zip(a, b):
        np.testing.assert_array_equal(qa.z, qb.z)
    assert all(q.residual <= 1e-10 for q in a)


def test_sampling_includes_degenerate_tori():
    points = sample_surface(SphereProfile(3, R=1.0), 200, seed=3, zero_fraction=0.5)
    assert any(np.any(q.r == 0.0) for q in points)


def test_sampling_empty_surface():
    with pytest.raises(EmptySurfaceError):
        sample_surface(_PositiveProfile(2), 5, seed=0)


def test_axis_points(ellipsoid, cylinder):
    norms = sorted(q.norm for q in axis_points(ellipsoid))
    np.testing.assert_allclose(norms, [1.0, 2.0])
    assert len(axis_points(cylinder)) == 1


def test_surface_point_fields(ellipsoid):
    q = SurfacePoint.from_z(ellipsoid, [0, 2])
    assert q.residual == 0.0
    assert q.grad_norm_complex == pytest.approx(0.5)
    assert q.norm == pytest.approx(2.0)
    np.testing.assert_array_equal(q.position, [0, 2, 0, 0])


def test_boundedness(sphere, ellipsoid, cylinder):
    assert is_bounded(sphere, 10.0).status == "bounded"
    assert is_bounded(ellipsoid, 10.0).status == "bounded"
    verdict = is_bounded(cylinder, 10.0)
    assert verdict.status == "unbounded"
    assert max(verdict.witness) == pytest.approx(100.0)


def test_boundedness_tiny_and_empty_sublevel_sets():
    assert is_bounded(SphereProfile(2, R=1e-3), 10.0).status == "bounded"
    assert is_bounded(_PositiveProfile(2), 10.0).status == "inconclusive"


def test_boundedness_rejects_bad_radius(sphere):
    with pytest.raises(ValueError):
        is_bounded(sphere, 0.0)


def test_cylinder_boundedness_is_unbounded_only_beyond_one_dimension():
    assert is_bounded(CylinderProfile(1, R=1.0), 10.0).status == "bounded"
