import time

import numpy as np
import pytest

from src.geometry import build_frame, characteristic_curvature_radial
from src.profiles import CylinderProfile, EllipsoidProfile, SphereProfile, SurfacePoint, project_to_surface, search_box
from src.symmetry import (
    check_critical_relation,
    check_lemma,
    classify,
    distance_half_sq,
    find_critical_points,
    lemma_flow_derivative,
    position_decomposition,
    verify_symmetry,
)
from src.utils.errors import PreconditionError
from tests.conftest import builtin_profiles, random_polynomial


def test_distance_half_sq():
    assert distance_half_sq([3.0, 4j]) == pytest.approx(12.5)


LEMMA_PROFILES = builtin_profiles() + [
    ("cylinder", CylinderProfile(2, R=1.0)),
    ("poly-2b", random_polynomial(2, seed=11)),
    ("poly-3b", random_polynomial(3, seed=12)),
]


@pytest.mark.parametrize("name,profile", LEMMA_PROFILES)
def test_position_is_orthogonal_to_t(name, profile, surface_points):
    # 10 profiles x 100 points, a third of them on degenerate tori
    for q in surface_points(profile, count=100, seed=1, zero_fraction=0.3):
        assert check_lemma(profile, q) <= 1e-12, name
        assert abs(lemma_flow_derivative(profile, q)) <= 1e-8, name


def test_position_decomposition(surface_points):
    profile = EllipsoidProfile(3, a=[1.0, 2.0, 3.0])
    moving = 0
    for q in surface_points(profile, count=10, seed=2, zero_fraction=0.0):
        parts = position_decomposition(profile, q)
        assert abs(parts.characteristic) <= 1e-12
        assert parts.normal**2 + parts.horizontal_norm**2 == pytest.approx(q.norm**2, rel=1e-12)
        moving += parts.horizontal_norm > 1e-6
    # generic points of an unequal-axis ellipsoid are not critical
    assert moving == 10


def test_position_decomposition_on_sphere(surface_points):
    profile = SphereProfile(3, R=2.0)
    for q in surface_points(profile, count=5):
        parts = position_decomposition(profile, q)
        assert parts.normal == pytest.approx(-2.0)
        assert parts.horizontal_norm <= 1e-12


def test_ellipsoid_critical_points(ellipsoid):
    results = find_critical_points(ellipsoid, multistart=12, seed=3)
    assert [cp.norm for cp in results] == pytest.approx([1.0, 2.0], abs=1e-9)
    assert [cp.kind for cp in results] == ["min", "max"]
    np.testing.assert_allclose(results[0].hessian_eigenvalues, [0.75, 0.75], atol=1e-8)
    np.testing.assert_allclose(results[1].hessian_eigenvalues, [-3.0, -3.0], atol=1e-8)
    for cp in results:
        assert cp.relation_holds
        assert cp.rigidity_residual <= 1e-10
        assert cp.parallel_residual <= 1e-8
        assert cp.h_TT_at == pytest.approx(1.0 / cp.norm)
        assert check_critical_relation(ellipsoid, cp) == pytest.approx(cp.rigidity_residual, abs=1e-15)
        assert set(cp.to_dict()) >= {"radii", "norm", "kind", "rigidity_residual", "hessian_eigenvalues"}


def test_ellipsoid_axis_tori_are_critical():
    a = [1.0, 2.0, 3.0]
    results = find_critical_points(EllipsoidProfile(3, a=a), multistart=21, seed=4)
    assert [cp.norm for cp in results] == pytest.approx(a, abs=1e-9)
    assert results[0].kind == "min"
    assert results[-1].kind == "max"
    assert results[1].kind == "saddle"


def test_sphere_critical_points_have_norm_r():
    profile = SphereProfile(2, R=1.5)
    results = find_critical_points(profile, multistart=6, seed=5)
    assert results
    for cp in results:
        assert cp.norm == pytest.approx(1.5, abs=1e-9)
        assert cp.relation_holds
        assert cp.kind == "undetermined"


@pytest.mark.parametrize("dim,seed", [(2, 1), (2, 2), (3, 3), (3, 4), (4, 5)])
def test_polynomial_critical_points(dim, seed):
    profile = random_polynomial(dim, seed=seed)
    results = find_critical_points(profile, multistart=12, seed=seed)
    norms = [cp.norm for cp in results]
    assert norms == sorted(norms)
    for cp in results:
        assert cp.rigidity_residual <= 1e-6
        assert cp.parallel_residual <= 1e-8
        assert cp.p_hat.residual <= 1e-10


def test_critical_points_reproducible(polynomial):
    first = [cp.to_dict() for cp in find_critical_points(polynomial, multistart=8, seed=7, workers=1)]
    second = [cp.to_dict() for cp in find_critical_points(polynomial, multistart=8, seed=7, workers=4)]
    assert first == second


def test_critical_points_need_bounded_profile(cylinder):
    with pytest.raises(PreconditionError):
        find_critical_points(cylinder)


def test_classify_minimal_torus(ellipsoid):
    q = SurfacePoint.from_z(ellipsoid, [1.0, 0.0])
    kind, eigs = classify(ellipsoid, q)
    assert kind == "min"
    np.testing.assert_allclose(eigs, [0.75, 0.75], atol=1e-12)


@pytest.mark.parametrize("R", [0.5, 1.0, 3.0])
def test_verify_sphere(R):
    verdict = verify_symmetry(SphereProfile(3, R=R), sample_count=40, seed=1)
    assert verdict.verdict == "sphere"
    assert verdict.radius == pytest.approx(R, abs=1e-10)
    assert verdict.is_constant
    assert verdict.radius_check <= 1e-10
    output = verdict.as_output()
    assert "witness" not in output and "reason" not in output
    assert output["radius"] == verdict.radius


def test_verify_ellipsoid_is_not_sphere(ellipsoid):
    verdict = verify_symmetry(ellipsoid, sample_count=60, seed=2)
    assert verdict.verdict == "not_sphere"
    assert verdict.radius is None
    low, high = verdict.witness
    assert low.h_TT == pytest.approx(0.5, abs=1e-12)
    assert 1.0 <= high.h_TT <= 1.08
    assert high.h_TT - low.h_TT > verdict.tolerances["constancy_tol"]
    assert verdict.h_TT_spread > 0.1
    assert verdict.as_output()["radius"] is None


def test_verify_cylinder_precondition(cylinder):
    verdict = verify_symmetry(cylinder, sample_count=30, seed=3)
    assert verdict.verdict == "precondition_failed"
    assert verdict.reason == "unbounded"
    assert verdict.h_TT_spread <= 1e-12
    assert verdict.h_TT_mean == pytest.approx(1.0)


@pytest.mark.parametrize("seed", [0, 1, 2, 3, 4])
@pytest.mark.parametrize(
    "profile,expected",
    [
        (SphereProfile(2, R=2.0), "sphere"),
        (EllipsoidProfile(2, a=[1.0, 1.3]), "not_sphere"),
        (EllipsoidProfile(3, a=[1.0, 2.0, 3.0]), "not_sphere"),
        (random_polynomial(3, seed=5), "not_sphere"),
        (CylinderProfile(2, R=1.0), "precondition_failed"),
    ],
)
def test_verdict_is_seed_stable(seed, profile, expected):
    assert verify_symmetry(profile, sample_count=30, seed=seed).verdict == expected


def test_verify_is_deterministic(polynomial):
    a = verify_symmetry(polynomial, sample_count=25, seed=9, workers=1)
    b = verify_symmetry(polynomial, sample_count=25, seed=9, workers=3)
    assert a.as_output() == b.as_output()


def test_perturbed_semiaxis_flips_verdict():
    assert verify_symmetry(EllipsoidProfile(3, a=[1.5, 1.5, 1.5]), 40, seed=6).verdict == "sphere"
    assert verify_symmetry(EllipsoidProfile(3, a=[1.65, 1.5, 1.5]), 40, seed=6).verdict == "not_sphere"


def test_axis_point_curvature_matches_norm():
    profile = EllipsoidProfile(3, a=[1.0, 2.0, 3.0])
    for m, a_m in enumerate(profile.a):
        z = np.zeros(3, dtype=complex)
        z[m] = np.exp(0.7j)
        q = project_to_surface(profile, z)
        assert q.norm == pytest.approx(a_m)
        assert characteristic_curvature_radial(profile, q) == pytest.approx(1.0 / a_m)
        frame = build_frame(profile, q)
        np.testing.assert_allclose(q.position, -q.norm * frame.N, atol=1e-12)


@pytest.mark.parametrize("R", [11.0, 20.0, 150.0])
def test_verify_large_sphere(R):
    verdict = verify_symmetry(SphereProfile(2, R=R), sample_count=30, seed=1)
    assert verdict.verdict == "sphere"
    assert verdict.radius == pytest.approx(R, abs=1e-10 * R)
    assert verdict.search_radius > R


def test_verify_long_ellipsoid():
    verdict = verify_symmetry(EllipsoidProfile(2, a=[1.0, 12.0]), sample_count=30, seed=2)
    assert verdict.verdict == "not_sphere"
    assert verdict.bounded == "bounded"


def test_critical_points_of_large_sphere():
    results = find_critical_points(SphereProfile(2, R=20.0), multistart=6, seed=5)
    assert results
    assert all(cp.norm == pytest.approx(20.0, abs=1e-8) for cp in results)


def test_search_box_is_sized_from_the_profile():
    assert search_box(SphereProfile(3, R=20.0)).search_radius == pytest.approx(40.0)
    assert search_box(SphereProfile(2, R=0.01)).status == "bounded"
    cylinder = search_box(CylinderProfile(2, R=1.0))
    assert cylinder.status == "unbounded"
    assert cylinder.search_radius >= 1e3


def test_fixed_search_radius_is_honoured():
    # a box smaller than the sphere makes the sublevel set touch its face
    assert search_box(SphereProfile(2, R=20.0), search_radius=10.0).status == "unbounded"
    verdict = verify_symmetry(SphereProfile(2, R=2.0), sample_count=10, seed=1, search_radius=10.0)
    assert verdict.search_radius == 10.0
    assert verdict.verdict == "sphere"


def test_sample_count_excludes_axis_points(ellipsoid):
    verdict = verify_symmetry(ellipsoid, sample_count=25, seed=3)
    assert verdict.sample_count == 25
    assert verdict.axis_count == 2


def test_radius_mismatch_has_its_own_witness(ellipsoid, monkeypatch):
    # constant h_TT = 1 on a non-round boundary: norms spread over [1, 2]
    monkeypatch.setattr("src.symmetry.verdict.characteristic_curvature_radial", lambda profile, q, tol: 1.0)
    verdict = verify_symmetry(ellipsoid, sample_count=20, seed=4)
    assert verdict.verdict == "not_sphere"
    assert verdict.reason == "radius_mismatch"
    assert verdict.witness is None
    near, far = verdict.radius_witness
    assert near.norm == pytest.approx(1.0)
    assert far.norm == pytest.approx(2.0)
    output = verdict.as_output()
    assert "witness" not in output and "radius_witness" in output


@pytest.mark.parametrize(
    "profile,expected",
    [(SphereProfile(3, R=1.0), "sphere"), (EllipsoidProfile(3, a=[1.0, 2.0, 3.0]), "not_sphere")],
)
def test_verdict_at_500_samples_within_five_seconds(profile, expected):
    start = time.perf_counter()
    verdict = verify_symmetry(profile, sample_count=500, seed=0)
    elapsed = time.perf_counter() - start
    assert verdict.verdict == expected
    assert elapsed < 5.0
