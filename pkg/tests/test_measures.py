import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from swembed.measures import (
    EmpiricalMeasure,
    Matching,
    MeasureMismatchError,
    matching_cost,
    pushforward,
    solve_assignment,
    w1,
    w1_line,
)

from oracles import brute_force_w1, random_orthogonal


def test_measure_basics():
    alpha = EmpiricalMeasure([[0.0, 1.0], [2.0, 3.0], [0.0, 1.0]])
    assert (alpha.k, alpha.n) == (3, 2)
    assert EmpiricalMeasure([1.0, 2.0]).n == 1
    with pytest.raises(ValueError):
        alpha.points[0, 0] = 5.0


@pytest.mark.parametrize("bad", [[], [[]], [[1.0, np.nan]], np.zeros((2, 2, 2))])
def test_measure_rejects_bad_points(bad):
    with pytest.raises(ValueError):
        EmpiricalMeasure(bad)


def test_matching_validates_permutation():
    with pytest.raises(ValueError):
        Matching((0, 0), 1.0)


def test_w1_single_point():
    dist, m = w1(EmpiricalMeasure([[0, 0]]), EmpiricalMeasure([[3, 4]]))
    assert dist == 5.0
    assert m.permutation == (0,)


def test_w1_two_points_on_line():
    # identity: (1 + 8) / 2 = 4.5, swap: (2 + 9) / 2 = 5.5
    dist, m = w1(EmpiricalMeasure([0.0, 10.0]), EmpiricalMeasure([1.0, 2.0]))
    assert dist == 4.5
    assert m.permutation == (0, 1)
    assert w1_line([0.0, 10.0], [1.0, 2.0])[0] == 4.5


def test_w1_mismatch():
    with pytest.raises(MeasureMismatchError) as exc:
        w1(EmpiricalMeasure([[0, 0]]), EmpiricalMeasure([[0, 0], [1, 1]]))
    assert exc.value.field == "k"
    with pytest.raises(MeasureMismatchError) as exc:
        w1(EmpiricalMeasure([[0, 0]]), EmpiricalMeasure([[0, 0, 0]]))
    assert exc.value.field == "n"
    with pytest.raises(MeasureMismatchError):
        w1_line([1.0], [1.0, 2.0])


def test_w1_matches_brute_force():
    rng = np.random.default_rng(11)
    for _ in range(150):
        k, n = rng.integers(1, 7), rng.integers(1, 5)
        alpha = EmpiricalMeasure(rng.normal(size=(k, n)))
        beta = EmpiricalMeasure(rng.normal(size=(k, n)))
        dist, m = w1(alpha, beta)
        ref, _ = brute_force_w1(alpha, beta)
        assert dist == ref
        assert m.cost == dist


def test_solver_against_scipy():
    optimize = pytest.importorskip("scipy.optimize")
    rng = np.random.default_rng(5)
    for _ in range(200):
        k = rng.integers(1, 30)
        c = rng.exponential(size=(k, k))
        perm = solve_assignment(c)
        r, col = optimize.linear_sum_assignment(c)
        assert math.isclose(c[np.arange(k), perm].sum(), c[r, col].sum(), rel_tol=1e-12)


def test_solver_handles_ties_and_integers():
    c = np.ones((5, 5))
    perm = solve_assignment(c)
    assert sorted(perm) == list(range(5))
    c = np.array([[4, 1, 3], [2, 0, 5], [3, 2, 2]])
    perm = solve_assignment(c)
    assert c[np.arange(3), perm].sum() == 5


def test_solver_rejects_non_square():
    with pytest.raises(ValueError):
        solve_assignment(np.zeros((2, 3)))


def test_w1_line_identical():
    vals = [3.0, -1.0, 3.0, 7.5]
    dist, m = w1_line(vals, list(reversed(vals)))
    assert dist == 0.0
    a, b = np.array(vals), np.array(list(reversed(vals)))
    assert np.array_equal(a, b[list(m.permutation)])


def test_w1_line_matching_indices():
    dist, m = w1_line([5.0, 1.0, 3.0], [0.0, 4.0, 2.0])
    # sorted pairs: 1-0, 3-2, 5-4
    assert m.permutation == (1, 0, 2)
    assert dist == 1.0


def test_w1_line_equals_solver():
    rng = np.random.default_rng(2)
    for _ in range(200):
        k = rng.integers(1, 8)
        a, b = rng.normal(size=k), rng.normal(size=k)
        assert w1_line(a, b)[0] == w1(EmpiricalMeasure(a), EmpiricalMeasure(b))[0]


point_clouds = st.integers(1, 5).flatmap(
    lambda k: st.integers(1, 4).flatmap(
        lambda n: st.tuples(
            *[arrays(np.float64, (k, n), elements=st.floats(-10, 10)) for _ in range(3)]
        )
    )
)


@settings(max_examples=500, deadline=None)
@given(point_clouds)
def test_metric_axioms(triple):
    a, b, c = (EmpiricalMeasure(p) for p in triple)
    ab, ba = w1(a, b)[0], w1(b, a)[0]
    assert ab == ba
    assert w1(a, a)[0] == 0.0
    assert w1(a, c)[0] <= ab + w1(b, c)[0] + 1e-9


@settings(max_examples=100, deadline=None)
@given(point_clouds, st.randoms(use_true_random=False))
def test_permutation_invariance(triple, rnd):
    a, b, _ = triple
    pa = list(range(len(a)))
    pb = list(range(len(b)))
    rnd.shuffle(pa)
    rnd.shuffle(pb)
    ref = w1(EmpiricalMeasure(a), EmpiricalMeasure(b))[0]
    assert w1(EmpiricalMeasure(a[pa]), EmpiricalMeasure(b[pb]))[0] == ref


def test_translation_and_rotation_invariance():
    rng = np.random.default_rng(8)
    for _ in range(100):
        k, n = rng.integers(1, 6), rng.integers(1, 5)
        alpha = EmpiricalMeasure(rng.normal(size=(k, n)))
        beta = EmpiricalMeasure(rng.normal(size=(k, n)))
        ref = w1(alpha, beta)[0]
        v = rng.normal(size=n) * 3
        assert abs(w1(alpha.translate(v), beta.translate(v))[0] - ref) < 1e-12
        q = random_orthogonal(rng, n)
        assert abs(w1(alpha.transform(q), beta.transform(q))[0] - ref) < 1e-10


def test_pushforward_identity_and_scaling():
    alpha = EmpiricalMeasure([0.0, 1.0])
    beta = EmpiricalMeasure([3.0, 5.0])
    assert pushforward(lambda x: x, alpha) == alpha
    double = lambda x: 2 * x
    assert w1(alpha, beta)[0] == 3.5
    assert w1(pushforward(double, alpha), pushforward(double, beta))[0] == 7.0


def test_pushforward_changes_dimension():
    alpha = EmpiricalMeasure([[1.0, 2.0], [3.0, 4.0]])
    image = pushforward(lambda x: [x.sum()], alpha)
    assert (image.k, image.n) == (2, 1)


def test_pushforward_bi_lipschitz_sandwich():
    # f(x) = A x with singular values in [1/L, L] is L-bi-Lipschitz
    rng = np.random.default_rng(4)
    L = 2.5
    for _ in range(200):
        k, n = rng.integers(1, 5), rng.integers(1, 4)
        u, v = random_orthogonal(rng, n), random_orthogonal(rng, n)
        s = rng.uniform(1 / L, L, size=n)
        A = u @ np.diag(s) @ v
        f = lambda x: A @ x
        alpha = EmpiricalMeasure(rng.normal(size=(k, n)))
        beta = EmpiricalMeasure(rng.normal(size=(k, n)))
        d = w1(alpha, beta)[0]
        d_img = w1(pushforward(f, alpha), pushforward(f, beta))[0]
        assert d / L - 1e-12 <= d_img <= L * d + 1e-12


def test_pushforward_control_function_sandwich():
    # f(x) = x + sin(x) on the line is a coarse embedding with
    # rho_-(t) = max(t - 2, 0) and rho_+(t) = 2 t.  The lower control of
    # the pushforward is rho_-(W_1) / k (rho_- applied to the mean matched
    # distance); rho_-(k W_1) / k is not a valid lower bound for this rho_-.
    f = lambda x: x + np.sin(x)
    rho_minus = lambda t: max(t - 2.0, 0.0)
    rho_plus = lambda t: 2.0 * t
    rng = np.random.default_rng(9)
    for _ in range(200):
        k = rng.integers(1, 6)
        alpha = EmpiricalMeasure(rng.normal(scale=5, size=k))
        beta = EmpiricalMeasure(rng.normal(scale=5, size=k))
        dist = w1(alpha, beta)[0]
        img = w1(pushforward(f, alpha), pushforward(f, beta))[0]
        assert rho_minus(dist) / k <= img + 1e-12
        assert img <= rho_plus(k * dist) + 1e-12


def test_pushforward_lower_control_needs_mean_argument():
    # f(x) = 2 floor(x / 2) is a coarse embedding of the line with
    # rho_-(t) = max(t - 2, 0).  Both pairs below collapse onto the same
    # images, so W_1 of the images is 0 although sum-of-distances is 3.6.
    f = lambda x: 2.0 * np.floor(x / 2.0)
    rho_minus = lambda t: max(t - 2.0, 0.0)
    alpha = EmpiricalMeasure([0.1, 4.1])
    beta = EmpiricalMeasure([1.9, 5.9])
    k = 2
    dist = w1(alpha, beta)[0]
    img = w1(pushforward(f, alpha), pushforward(f, beta))[0]
    assert math.isclose(dist, 1.8) and img == 0.0
    assert rho_minus(dist) / k <= img
    assert rho_minus(k * dist) / k > img


def test_pushforward_subadditive_control_sandwich():
    # for subadditive rho_- (here linear) the stronger form
    # rho_-(k W_1) / k <= W_1(images) also holds
    rng = np.random.default_rng(10)
    f = lambda x: 0.5 * x
    for _ in range(100):
        k = rng.integers(1, 6)
        alpha = EmpiricalMeasure(rng.normal(size=(k, 2)))
        beta = EmpiricalMeasure(rng.normal(size=(k, 2)))
        total = k * w1(alpha, beta)[0]
        img = w1(pushforward(f, alpha), pushforward(f, beta))[0]
        assert 0.5 * total / k <= img + 1e-12


def test_matching_cost_ties_are_bit_identical():
    # with both points of alpha left of beta every matching has the same
    # exact cost; the exact line sum reports it as the same double
    alpha = EmpiricalMeasure([0.1, 0.3])
    beta = EmpiricalMeasure([0.5, 0.7])
    same = matching_cost(alpha, beta, [0, 1])
    assert matching_cost(alpha, beta, [1, 0]) == same
    assert same == math.fsum([0.5, 0.7, -0.1, -0.3]) / 2
