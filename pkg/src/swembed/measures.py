"""Empirical measures and their exact 1-Wasserstein distance.

An empirical measure of size ``k`` is ``(1/k) sum_i delta_{x_i}``.  For two
such measures the 1-Wasserstein distance is the mean matched distance of
an optimal bijection between their supports, found here with a dense
shortest-augmenting-path assignment solver.
"""

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "MeasureMismatchError",
    "EmpiricalMeasure",
    "Matching",
    "cost_matrix",
    "solve_assignment",
    "matching_cost",
    "w1",
    "w1_line",
    "pushforward",
]


class MeasureMismatchError(ValueError):
    """Two measures (or value lists) disagree in size or dimension.

    ``field`` names the offending attribute, ``"k"`` or ``"n"``.
    """

    def __init__(self, field, left, right):
        self.field = field
        self.left = left
        self.right = right
        super().__init__(f"{field} mismatch: {left} != {right}")


class EmpiricalMeasure:
    """Uniformly weighted point cloud ``(1/k) sum_i delta_{x_i}`` in ``R^n``.

    Parameters
    ----------
    points : array_like, shape (k, n)
        Support points; duplicates are allowed.  A 1-D sequence is read as
        ``k`` points on the line.

    The stored order carries no meaning: every distance computed on a
    measure is invariant under reordering its points.
    """

    __slots__ = ("_points",)

    def __init__(self, points):
        pts = np.array(points, dtype=float)
        if pts.ndim == 1:
            pts = pts[:, None]
        if pts.ndim != 2 or pts.shape[0] < 1 or pts.shape[1] < 1:
            raise ValueError(
                f"points must have shape (k, n) with k, n >= 1, got {pts.shape}"
            )
        if not np.all(np.isfinite(pts)):
            raise ValueError("points must be finite")
        pts += 0.0  # -0.0 -> +0.0, so equal multisets have equal bytes
        pts.setflags(write=False)
        self._points = pts

    @property
    def points(self):
        return self._points

    @property
    def k(self):
        return self._points.shape[0]

    @property
    def n(self):
        return self._points.shape[1]

    def __repr__(self):
        return f"EmpiricalMeasure(k={self.k}, n={self.n})"

    def __eq__(self, other):
        if not isinstance(other, EmpiricalMeasure):
            return NotImplemented
        return np.array_equal(self._points, other._points)

    def __hash__(self):
        return hash((self._points.shape, self._points.tobytes()))

    def translate(self, v):
        return EmpiricalMeasure(self._points + np.asarray(v, dtype=float))

    def transform(self, matrix):
        """Apply a linear map ``x -> matrix @ x`` to every point."""
        return EmpiricalMeasure(self._points @ np.asarray(matrix, dtype=float).T)


@dataclass(frozen=True)
class Matching:
    """A bijection ``i -> permutation[i]`` (0-based) and its mean cost."""

    permutation: tuple
    cost: float

    def __post_init__(self):
        perm = tuple(int(p) for p in self.permutation)
        if sorted(perm) != list(range(len(perm))):
            raise ValueError(f"not a permutation: {perm}")
        object.__setattr__(self, "permutation", perm)


def _check_compatible(alpha, beta):
    if alpha.n != beta.n:
        raise MeasureMismatchError("n", alpha.n, beta.n)
    if alpha.k != beta.k:
        raise MeasureMismatchError("k", alpha.k, beta.k)


def _distances(diff):
    # norms along the last axis; shared by cost_matrix and matching_cost so
    # a matched pair gets the bit-identical distance from either path
    if diff.shape[-1] == 1:
        return np.abs(diff[..., 0])
    return np.sqrt(np.sum(diff * diff, axis=-1))


def cost_matrix(alpha, beta):
    """Euclidean distances ``C[i, j] = |x_i - y_j|`` between two supports."""
    return _distances(alpha.points[:, None, :] - beta.points[None, :, :])


def solve_assignment(cost):
    """Minimum-cost perfect matching on a dense square cost matrix.

    Shortest augmenting paths with row/column potentials (the
    Jonker-Volgenant / Kuhn-Munkres scheme), ``O(k^3)``.

    Parameters
    ----------
    cost : array_like, shape (k, k)

    Returns
    -------
    ndarray of int, shape (k,)
        ``perm`` with row ``i`` assigned to column ``perm[i]``.
    """
    c = np.asarray(cost, dtype=float)
    if c.ndim != 2 or c.shape[0] != c.shape[1]:
        raise ValueError(f"cost must be square, got shape {c.shape}")
    k = c.shape[0]
    if k == 0:
        return np.zeros(0, dtype=int)
    if not np.all(np.isfinite(c)):
        raise ValueError("cost must be finite")

    # Index 0 of u / v / row_of is a virtual source column; real rows and
    # columns are 1-based inside the loop.
    u = np.zeros(k + 1)
    v = np.zeros(k + 1)
    row_of = np.zeros(k + 1, dtype=int)
    way = np.zeros(k + 1, dtype=int)
    for i in range(1, k + 1):
        row_of[0] = i
        j0 = 0
        minv = np.full(k + 1, np.inf)
        used = np.zeros(k + 1, dtype=bool)
        while True:
            used[j0] = True
            i0 = row_of[j0]
            free = ~used[1:]
            reduced = c[i0 - 1] - u[i0] - v[1:]
            better = free & (reduced < minv[1:])
            idx = np.flatnonzero(better) + 1
            minv[idx] = reduced[idx - 1]
            way[idx] = j0
            cand = np.where(free, minv[1:], np.inf)
            j1 = int(np.argmin(cand)) + 1
            delta = cand[j1 - 1]
            used_idx = np.flatnonzero(used)
            u[row_of[used_idx]] += delta
            v[used_idx] -= delta
            minv[1:][free] -= delta
            j0 = j1
            if row_of[j0] == 0:
                break
        while j0:
            j1 = way[j0]
            row_of[j0] = row_of[j1]
            j0 = j1

    perm = np.empty(k, dtype=int)
    perm[row_of[1:] - 1] = np.arange(k)
    return perm


def _line_cost(a, b):
    # exact sum of |a_i - b_i|: fl(a - b) always has the right sign, and
    # fsum of the signed coordinates is correctly rounded, so matchings
    # that tie in exact arithmetic give bit-identical costs
    s = np.sign(a - b)
    return math.fsum(np.concatenate([s * a, -s * b])) / a.size


def matching_cost(alpha, beta, perm):
    """Mean matched distance ``(1/k) sum_i |x_i - y_perm[i]|``.

    Summed with ``math.fsum``; on the line the sum is exact.
    """
    _check_compatible(alpha, beta)
    perm = np.asarray(perm, dtype=int)
    x, y = alpha.points, beta.points[perm]
    if alpha.n == 1:
        return _line_cost(x[:, 0], y[:, 0])
    return math.fsum(_distances(x - y)) / alpha.k


def _lex_order(points):
    return np.lexsort(points.T[::-1])


def w1(alpha, beta):
    """Exact 1-Wasserstein distance between two empirical measures of size ``k``.

    Returns
    -------
    distance : float
        ``(1/k) min_pi sum_i |x_i - y_pi(i)|``.
    matching : Matching
        One optimal bijection, ``alpha`` index ``i`` to ``beta`` index
        ``permutation[i]``.

    Raises
    ------
    MeasureMismatchError
        If the sizes or dimensions differ.

    Notes
    -----
    Both supports are put in lexicographic order, and the pair itself in
    a canonical order, before solving.  The result is then a function of
    the two multisets only: exactly symmetric and exactly invariant under
    reordering of the stored points, even when several matchings tie.
    """
    _check_compatible(alpha, beta)
    ia, ib = _lex_order(alpha.points), _lex_order(beta.points)
    a_sorted = EmpiricalMeasure(alpha.points[ia])
    b_sorted = EmpiricalMeasure(beta.points[ib])
    swapped = b_sorted.points.tobytes() < a_sorted.points.tobytes()
    first, second = (b_sorted, a_sorted) if swapped else (a_sorted, b_sorted)
    sub = solve_assignment(cost_matrix(first, second))
    cost = matching_cost(first, second, sub)
    perm = np.empty(alpha.k, dtype=int)
    if swapped:
        perm[ia[sub]] = ib
    else:
        perm[ia] = ib[sub]
    return cost, Matching(tuple(perm), cost)


def w1_line(values_a, values_b):
    """1-Wasserstein distance of two size-``k`` empirical measures on the line.

    Pairs order statistics: the ``j``-th smallest of ``values_a`` with the
    ``j``-th smallest of ``values_b``.  Stable sorts keep ties in input
    order, so the returned matching is deterministic.
    """
    a = np.asarray(values_a, dtype=float).ravel()
    b = np.asarray(values_b, dtype=float).ravel()
    if a.size != b.size:
        raise MeasureMismatchError("k", a.size, b.size)
    if a.size == 0:
        raise ValueError("empty value lists")
    ia = np.argsort(a, kind="stable")
    ib = np.argsort(b, kind="stable")
    perm = np.empty(a.size, dtype=int)
    perm[ia] = ib
    cost = _line_cost(a[ia], b[ib])
    return cost, Matching(tuple(perm), cost)


def pushforward(f, alpha):
    """Image measure ``(1/k) sum_i delta_{f(x_i)}`` under a point map ``f``.

    ``f`` takes one point (1-D array of length ``n``) and returns a point of
    some fixed dimension ``m``.
    """
    images = [np.atleast_1d(np.asarray(f(x), dtype=float)) for x in alpha.points]
    return EmpiricalMeasure(np.stack(images))
