import itertools

import numpy as np
import pytest

from src.geometry import (
    bordered_determinant,
    characteristic_curvature_radial,
    complex_structure,
    curvature_report,
    horizontal_complex_basis,
    levi_bracket_check,
    levi_curvature_det,
    levi_curvature_sym,
    levi_curvatures_det,
    levi_curvatures_sym,
    levi_eigenvalues,
    levi_form_matrix,
    mean_curvature,
    report_columns,
    report_row,
    scan_reports,
    second_fundamental_form,
)
from src.profiles import EllipsoidProfile, PolynomialProfile, SphereProfile, project_to_surface
from src.profiles.surface import realify
from tests.conftest import builtin_profiles, random_polynomial

# spheres, both ellipsoids and five bounded polynomials, n from 1 to 3
RELATION_PROFILES = builtin_profiles() + [
    ("poly-2b", random_polynomial(2, seed=11)),
    ("poly-3b", random_polynomial(3, seed=12)),
]


@pytest.mark.parametrize("R", [0.5, 1.0, 3.0])
@pytest.mark.parametrize("dim", [2, 3, 4])
def test_sphere_levi_form(R, dim, surface_points):
    profile = SphereProfile(dim, R=R)
    for q in surface_points(profile, count=20, seed=dim):
        np.testing.assert_allclose(levi_form_matrix(profile, q), np.eye(dim - 1) / R, atol=1e-12)
        for j in range(1, dim):
            assert levi_curvature_sym(profile, q, j) == pytest.approx(R**-j, abs=1e-10)
            assert levi_curvature_det(profile, q, j) == pytest.approx(R**-j, abs=1e-10)


def test_sphere_bordered_determinant():
    profile = SphereProfile(3, R=1.0)
    z = np.array([0.6, 0.48j, 0.64])
    for I in [(0, 1), (1, 2), (0, 1, 2)]:
        assert bordered_determinant(profile, z, I) == pytest.approx(-np.sum(np.abs(z[list(I)]) ** 2))


@pytest.mark.parametrize("name,profile", RELATION_PROFILES)
def test_levi_routes_agree(name, profile, surface_points):
    for q in surface_points(profile, count=25, seed=4):
        sym = levi_curvatures_sym(profile, q)
        det = levi_curvatures_det(profile, q)
        np.testing.assert_allclose(det, sym, atol=1e-8, rtol=1e-8, err_msg=name)


def test_levi_eigenvalues_sorted_and_positive_on_convex_profiles(surface_points):
    for profile in (EllipsoidProfile(3, a=[1.0, 2.0, 3.0]), random_polynomial(4, seed=12)):
        for q in surface_points(profile, count=10, seed=1):
            eigs = levi_eigenvalues(profile, q)
            assert np.all(np.diff(eigs) <= 0)
            assert np.all(eigs > 0)


def test_bordered_determinant_uses_only_its_radii():
    # separable profile: g_k depends on r_k alone
    profile = PolynomialProfile(3, coefficients={"1,0,0": 1.0, "2,0,0": 0.3, "0,1,0": 0.5, "0,0,2": 2.0, "0,0,0": -1.0})
    z = np.array([0.5, 0.7j, 0.2 + 0.1j])
    base = bordered_determinant(profile, z, (0, 2))
    moved = z.copy()
    moved[1] = 1.3 * np.exp(0.4j)
    assert bordered_determinant(profile, moved, (0, 2)) == pytest.approx(base, rel=1e-14)


def test_bordered_determinant_ignores_phases():
    profile = random_polynomial(3, seed=22)
    z = np.array([0.5, 0.4j, 0.3])
    rotated = z * np.exp(1j * np.array([0.3, -1.2, 2.0]))
    for I in itertools.combinations(range(3), 2):
        assert bordered_determinant(profile, rotated, I) == pytest.approx(bordered_determinant(profile, z, I), rel=1e-12)


@pytest.mark.parametrize("name,profile", builtin_profiles())
def test_levi_form_is_hermitian_part_of_second_fundamental_form(name, profile, surface_points):
    for q in surface_points(profile, count=5, seed=2):
        A = levi_form_matrix(profile, q)
        for a, Z in enumerate(horizontal_complex_basis(profile, q)):
            X = realify(Z) / np.sqrt(2.0)
            Y = complex_structure(X)
            h_sum = second_fundamental_form(profile, q, X, X) + second_fundamental_form(profile, q, Y, Y)
            assert h_sum == pytest.approx(A[a, a].real, rel=1e-10, abs=1e-12), name


@pytest.mark.parametrize("R", [0.5, 2.0])
def test_bracket_check_sphere(R):
    profile = SphereProfile(2, R=R)
    q = project_to_surface(profile, [0.8, 0.6j])
    check = levi_bracket_check(profile, q)
    assert check.levi == pytest.approx(1.0 / R)
    assert check.residual <= 1e-6


@pytest.mark.parametrize("name,profile", builtin_profiles())
def test_bracket_check_general(name, profile, surface_points):
    q = surface_points(profile, count=1, seed=13, zero_fraction=0.0)[0]
    for index in range(profile.dim - 1):
        check = levi_bracket_check(profile, q, index=index)
        assert check.residual <= 1e-6 * max(1.0, abs(check.levi)), name


def test_bracket_check_index_out_of_range(sphere):
    with pytest.raises(IndexError):
        levi_bracket_check(sphere, [1.0, 0.0], index=1)


@pytest.mark.parametrize("name,profile", RELATION_PROFILES)
def test_mean_curvature_relation(name, profile, surface_points):
    n = profile.dim - 1
    for q in surface_points(profile, count=25, seed=7):
        expected = (2 * n * levi_curvature_sym(profile, q, 1) + characteristic_curvature_radial(profile, q)) / (2 * n + 1)
        assert abs(mean_curvature(profile, q) - expected) <= 1e-8, name


def test_levi_index_out_of_range(sphere):
    for j in (0, 2):
        with pytest.raises(ValueError):
            levi_curvature_sym(sphere, [1.0, 0.0], j)
        with pytest.raises(ValueError):
            levi_curvature_det(sphere, [1.0, 0.0], j)


def test_one_dimensional_profile_has_no_levi_curvatures():
    profile = SphereProfile(1, R=1.0)
    assert levi_eigenvalues(profile, [1.0]).size == 0
    assert levi_curvatures_sym(profile, [1.0]).size == 0
    assert levi_curvatures_det(profile, [1.0]).size == 0
    report = curvature_report(profile, [1.0])
    assert report.relation_residual == pytest.approx(0.0, abs=1e-14)
    assert report.levi_route_factor is None


def test_curvature_report_for_ellipsoid(surface_points):
    profile = EllipsoidProfile(3, a=[1.0, 2.0, 3.0])
    q = surface_points(profile, count=1)[0]
    report = curvature_report(profile, q)
    assert report.breaches(1e-8) == []
    assert report.levi_route_factor == pytest.approx(1.0, rel=1e-8)
    assert len(report.levi_eigenvalues) == len(report.levi_det) == len(report.levi_sym) == 2


def test_report_breaches_lists_large_residuals():
    report = curvature_report(SphereProfile(2, R=1.0), [1.0, 0.0])
    loose = report.model_copy(update={"route_residuals": {"h_TT": 1e-3, "levi": 0.0}, "relation_residual": 1.0})
    assert loose.breaches(1e-8) == ["h_TT", "relation_residual"]


def test_scan_keeps_input_order(polynomial, surface_points):
    points = surface_points(polynomial, count=12, seed=3)
    reports = scan_reports(polynomial, points, workers=3)
    for q, report in zip(points, reports):
        assert report.h_TT == characteristic_curvature_radial(polynomial, q)


def test_report_row_matches_columns(ellipsoid, surface_points):
    q = surface_points(ellipsoid, count=1)[0]
    row = report_row(4, q, curvature_report(ellipsoid, q))
    assert len(row) == len(report_columns(2))
    assert report_columns(2)[:4] == ["index", "x_1", "x_2", "y_1"]
    assert row[0] == 4
