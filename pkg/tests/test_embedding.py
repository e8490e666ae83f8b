import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from swembed.embedding import (
    KernelMatrix,
    NotNegativeSemidefiniteError,
    build_kernel,
    check_control_functions,
    check_negative_semidefinite,
    double_center,
    embed_finite_set,
)
from swembed.measures import EmpiricalMeasure, MeasureMismatchError


def random_measures(rng, m, k, n):
    return [EmpiricalMeasure(rng.normal(size=(k, n))) for _ in range(m)]


def squared_euclidean(points):
    diff = points[:, None, :] - points[None, :, :]
    return np.sum(diff * diff, axis=-1)


def test_kernel_single_measure():
    kern = build_kernel([EmpiricalMeasure([[0.0, 1.0]])])
    assert kern.values.shape == (1, 1) and kern.values[0, 0] == 0.0


def test_kernel_singletons_give_distance():
    d = 2.5
    kern = build_kernel([EmpiricalMeasure([[0.0, 0.0]]), EmpiricalMeasure([[0.0, d]])])
    np.testing.assert_allclose(kern.values, [[0.0, d], [d, 0.0]], rtol=1e-12)


def test_kernel_duplicates_are_zero():
    alpha = EmpiricalMeasure([[0.0, 1.0], [2.0, 3.0]])
    assert np.all(build_kernel([alpha] * 4).values == 0.0)
    beta = EmpiricalMeasure([[0.0, 1.0, 2.0], [2.0, 3.0, 4.0]])
    assert np.all(build_kernel([beta] * 3, num_samples=500).values == 0.0)


def test_kernel_mismatch_and_errors():
    with pytest.raises(MeasureMismatchError):
        build_kernel([EmpiricalMeasure([[0.0, 0.0]]), EmpiricalMeasure([[0.0, 0.0, 0.0]])])
    with pytest.raises(MeasureMismatchError):
        build_kernel([EmpiricalMeasure([[0.0, 0.0]]), EmpiricalMeasure([[0.0, 0.0], [1.0, 1.0]])])
    with pytest.raises(ValueError):
        build_kernel([])
    with pytest.raises(ValueError):
        build_kernel([EmpiricalMeasure([[0.0, 0.0]])], method="spectral")


def test_kernel_matrix_validation():
    with pytest.raises(ValueError):
        KernelMatrix([[0.0, 1.0], [2.0, 0.0]])
    with pytest.raises(ValueError):
        KernelMatrix([[1.0, 1.0], [1.0, 0.0]])
    with pytest.raises(ValueError):
        KernelMatrix([[0.0, 1.0, 2.0]])


def test_nsd_zero_kernel():
    ok, worst = check_negative_semidefinite(np.zeros((4, 4)))
    assert ok and worst == 0.0


def test_nsd_squared_euclidean():
    rng = np.random.default_rng(0)
    for _ in range(20):
        pts = rng.normal(size=(int(rng.integers(2, 12)), int(rng.integers(1, 6))))
        assert check_negative_semidefinite(squared_euclidean(pts))[0]


def test_nsd_detects_violation():
    # Euclidean distances cubed are not negative semi-definite
    pts = np.array([[0.0], [1.0], [2.0]])
    f = np.abs(pts - pts.T) ** 3
    ok, worst = check_negative_semidefinite(f)
    assert not ok and worst > 0
    with pytest.raises(NotNegativeSemidefiniteError):
        embed_finite_set(f)


def test_nsd_preserved_by_constant_off_diagonal():
    rng = np.random.default_rng(1)
    for _ in range(20):
        pts = rng.normal(size=(8, 3))
        f = squared_euclidean(pts) + rng.uniform(0.1, 5.0) * (1 - np.eye(8))
        assert check_negative_semidefinite(f)[0]


def test_nsd_exact_kernels():
    rng = np.random.default_rng(2)
    kern = build_kernel(random_measures(rng, 20, 3, 2))
    assert check_negative_semidefinite(kern)[0]
    f = kern.values
    for _ in range(100):
        a = rng.normal(size=20)
        a -= a.mean()
        assert a @ f @ a <= 1e-8 * np.abs(f).sum()


def test_nsd_monte_carlo_kernel():
    rng = np.random.default_rng(3)
    kern = build_kernel(random_measures(rng, 10, 2, 3), num_samples=20_000, seed=5)
    assert kern.std_errors is not None and kern.max_std_error > 0
    assert check_negative_semidefinite(kern)[0]


def test_double_center_row_sums_vanish():
    rng = np.random.default_rng(4)
    g = double_center(squared_euclidean(rng.normal(size=(6, 2))))
    np.testing.assert_allclose(g.sum(axis=0), 0.0, atol=1e-12)
    np.testing.assert_array_equal(g, g.T)


def test_embed_two_points():
    res = embed_finite_set([[0.0, 9.0], [9.0, 0.0]])
    assert res.dimension == 1
    assert math.isclose(abs(res.coordinates[0, 0] - res.coordinates[1, 0]), 3.0, rel_tol=1e-14)


def test_embed_planar_round_trip():
    rng = np.random.default_rng(5)
    pts = rng.normal(size=(10, 2))
    res = embed_finite_set(squared_euclidean(pts))
    assert res.dimension == 2
    emb = res.coordinates
    dist = np.linalg.norm(emb[:, None] - emb[None, :], axis=-1)
    ref = np.linalg.norm(pts[:, None] - pts[None, :], axis=-1)
    np.testing.assert_allclose(dist, ref, atol=1e-10)


def test_embed_exact_kernel_round_trip():
    rng = np.random.default_rng(6)
    kern = build_kernel(random_measures(rng, 20, 3, 2))
    res = embed_finite_set(kern)
    f = kern.values
    assert np.max(np.abs(res.squared_distances() - f)) <= 1e-8 * f.max()
    g = double_center(f)
    assert res.clipped_mass / np.trace(g) < 1e-6
    assert list(res.eigenvalues) == sorted(res.eigenvalues, reverse=True)
    assert res.dimension == int(np.sum(res.eigenvalues > 1e-12 * np.abs(res.eigenvalues).max()))


def test_embedding_result_dict():
    res = embed_finite_set([[0.0, 4.0], [4.0, 0.0]])
    d = res.to_dict()
    assert set(d) == {"coordinates", "eigenvalues", "clipped_mass"}
    assert isinstance(d["clipped_mass"], float)


def test_control_functions_identical_measures():
    alpha = EmpiricalMeasure([[0.0, 0.0], [1.0, 1.0]])
    measures = [alpha, alpha]
    report = check_control_functions(measures, embed_finite_set(build_kernel(measures)))
    assert report.violations == 0 and report.instance_count == 1


def test_control_functions_single_points_are_tight():
    # for k = 1 the kernel equals W_1, so |phi_i - phi_j|^2 = W_1
    rng = np.random.default_rng(7)
    measures = [EmpiricalMeasure([rng.normal(size=2)]) for _ in range(8)]
    report = check_control_functions(measures, embed_finite_set(build_kernel(measures)))
    assert report.violations == 0
    assert abs(report.min_ratio - 1.0) < 1e-9 and abs(report.max_ratio - 1.0) < 1e-9


def test_control_functions_monte_carlo():
    rng = np.random.default_rng(8)
    measures = random_measures(rng, 20, 2, 3)
    kern = build_kernel(measures, num_samples=100_000, seed=1)
    report = check_control_functions(measures, embed_finite_set(kern))
    assert report.instance_count == 190 and report.violations == 0


def test_control_functions_size_check():
    measures = [EmpiricalMeasure([[0.0, 0.0]]), EmpiricalMeasure([[1.0, 0.0]])]
    res = embed_finite_set(build_kernel(measures))
    with pytest.raises(ValueError):
        check_control_functions(measures[:1], res)


point_sets = st.integers(2, 8).flatmap(
    lambda m: st.integers(1, 4).flatmap(
        lambda d: arrays(np.float64, (m, d), elements=st.floats(-100, 100))
    )
)


@settings(max_examples=100, deadline=None)
@given(point_sets)
def test_round_trip_property(pts):
    f = squared_euclidean(pts)
    res = embed_finite_set(f)
    scale = max(f.max(), 1.0)
    assert np.max(np.abs(res.squared_distances() - f)) <= 1e-8 * scale + 2 * res.clipped_mass
