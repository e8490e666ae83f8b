"""Sliced 1-Wasserstein distance between equal-size empirical measures.

Convention: the slice distances are integrated against the *unnormalized*
surface measure of ``S^{n-1}``,

    SW_1(alpha, beta) = int_{S^{n-1}} W_1(theta_# alpha, theta_# beta) dtheta,

with no division by the sphere area.  Most libraries report the sphere
average instead; divide by ``sphere_area(n)`` to get it.  Under this
convention two Dirac masses at distance ``d`` have ``SW_1 = kappa(n) * d``.
"""

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass
from typing import Optional

import numpy as np

from .measures import EmpiricalMeasure, MeasureMismatchError, w1_line
from .sampling import BLOCK_SIZE, sphere_block
from .special_functions import sphere_area

__all__ = [
    "SlicedEstimate",
    "as_direction",
    "project",
    "slice_distances",
    "sw1_monte_carlo",
    "sw1_exact_2d",
    "sw1",
    "critical_angles",
]

MONTE_CARLO = "monte_carlo"
EXACT_2D = "exact_2d"

_ANGLE_TOL = 1e-12


@dataclass(frozen=True)
class SlicedEstimate:
    """A sliced distance value with its provenance.

    ``std_error`` is the Monte-Carlo standard error (0 for exact values);
    ``seed`` is None for exact values.
    """

    value: float
    method: str
    num_samples: int = 0
    std_error: float = 0.0
    seed: Optional[int] = None

    def __post_init__(self):
        if self.method not in (MONTE_CARLO, EXACT_2D):
            raise ValueError(f"unknown method {self.method!r}")
        if not self.value >= 0.0:
            raise ValueError(f"value must be nonnegative, got {self.value}")
        if self.method == EXACT_2D and self.std_error != 0.0:
            raise ValueError("exact estimates carry no standard error")

    def to_dict(self):
        return asdict(self)


def as_direction(theta):
    """Validate a unit vector (norm 1 within ``1e-12``) and return it as an array."""
    theta = np.asarray(theta, dtype=float).ravel()
    if abs(np.linalg.norm(theta) - 1.0) > 1e-12:
        raise ValueError(f"direction must be a unit vector, |theta| = {np.linalg.norm(theta)}")
    return theta


def project(alpha, theta):
    """Projections ``<x_i, theta>`` of the support points, in stored order."""
    theta = as_direction(theta)
    if theta.size != alpha.n:
        raise MeasureMismatchError("n", alpha.n, theta.size)
    return alpha.points @ theta


def _check_pair(alpha, beta):
    if alpha.n != beta.n:
        raise MeasureMismatchError("n", alpha.n, beta.n)
    if alpha.k != beta.k:
        raise MeasureMismatchError("k", alpha.k, beta.k)


def slice_distances(alpha, beta, directions):
    """1-D Wasserstein distance of the projected measures, one per row of ``directions``.

    Vectorized equivalent of ``w1_line(project(alpha, t), project(beta, t))``.
    """
    pa = np.sort(directions @ alpha.points.T, axis=1)
    pb = np.sort(directions @ beta.points.T, axis=1)
    return np.mean(np.abs(pa - pb), axis=1)


def sw1_monte_carlo(alpha, beta, num_samples, seed=0, workers=None):
    """Monte-Carlo estimate of the (unnormalized) sliced 1-Wasserstein distance.

    Parameters
    ----------
    alpha, beta : EmpiricalMeasure
        Same size ``k`` and dimension ``n >= 2``.
    num_samples : int
        Number of uniformly random directions.
    seed : int
        Unsigned 64-bit seed.  Direction ``i`` depends only on ``(seed, i)``.
    workers : int, optional
        Threads used to evaluate blocks of directions.  Has no effect on
        the result.

    Returns
    -------
    SlicedEstimate
        ``value = S_{n-1} * mean`` and ``std_error = S_{n-1} * sd / sqrt(N)``
        (sample standard deviation; 0 when ``N == 1``).
    """
    _check_pair(alpha, beta)
    if alpha.n < 2:
        raise ValueError("sliced distance needs n >= 2")
    num_samples = int(num_samples)
    if num_samples <= 0:
        raise ValueError("num_samples must be positive")
    seed = int(seed)
    n = alpha.n
    nblocks = -(-num_samples // BLOCK_SIZE)

    def run_block(b):
        dirs = sphere_block(n, seed, b)
        count = min(BLOCK_SIZE, num_samples - b * BLOCK_SIZE)
        return slice_distances(alpha, beta, dirs[:count])

    if workers is not None and workers > 1 and nblocks > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(run_block, range(nblocks)))
    else:
        parts = [run_block(b) for b in range(nblocks)]
    samples = np.concatenate(parts)

    area = sphere_area(n)
    value = area * float(np.mean(samples))
    if num_samples > 1:
        std_error = area * float(np.std(samples, ddof=1)) / math.sqrt(num_samples)
    else:
        std_error = 0.0
    return SlicedEstimate(value, MONTE_CARLO, num_samples, std_error, seed)


def critical_angles(points):
    """Angles in ``[0, pi)`` at which two of ``points`` (shape ``(m, 2)``) project equally.

    Sorted, deduplicated to within ``1e-12``; coincident points contribute
    nothing.
    """
    i, j = np.triu_indices(len(points), k=1)
    d = points[i] - points[j]
    d = d[np.any(d != 0.0, axis=1)]
    # canonical sign so that p - q and q - p give bit-identical angles
    flip = (d[:, 1] < 0.0) | ((d[:, 1] == 0.0) & (d[:, 0] < 0.0))
    d[flip] = -d[flip]
    ang = np.arctan2(d[:, 1], d[:, 0])  # in [0, pi)
    phi = np.where(ang < 0.5 * math.pi, ang + 0.5 * math.pi, ang - 0.5 * math.pi)
    phi = np.sort(phi)
    if phi.size == 0:
        return phi
    keep = np.concatenate([[True], np.diff(phi) > _ANGLE_TOL])
    return phi[keep]


def sw1_exact_2d(alpha, beta):
    """Exact sliced 1-Wasserstein distance in the plane.

    Between consecutive critical angles the order of all ``2k`` projections
    is fixed, so the sorted matching and the sign of every matched
    difference ``<v_i, theta>`` are constant.  On such an arc the slice
    distance is ``(1/k) <sum_i s_i v_i, (cos phi, sin phi)>``, integrated in
    closed form.  Only ``[0, pi)`` is integrated; the slice distance is
    even in ``theta``, so the result is doubled.
    """
    _check_pair(alpha, beta)
    if alpha.n != 2:
        raise ValueError(f"exact slicing is implemented for n = 2 only, got n = {alpha.n}")
    a, b = alpha.points, beta.points
    k = alpha.k
    crit = critical_angles(np.concatenate([a, b]))
    edges = np.concatenate([[0.0], crit[crit > _ANGLE_TOL], [math.pi]])
    lo, hi = edges[:-1], edges[1:]
    arcs = hi - lo > _ANGLE_TOL
    lo, hi = lo[arcs], hi[arcs]
    mid = 0.5 * (lo + hi)
    theta = np.stack([np.cos(mid), np.sin(mid)], axis=1)

    ia = np.argsort(theta @ a.T, axis=1, kind="stable")
    ib = np.argsort(theta @ b.T, axis=1, kind="stable")
    v = a[ia] - b[ib]  # (arcs, k, 2)
    s = np.sign(np.einsum("mkd,md->mk", v, theta))
    w = np.zeros((len(mid), 2))
    for j in range(k):
        w += s[:, j, None] * v[:, j, :]
    pieces = w[:, 0] * (np.sin(hi) - np.sin(lo)) - w[:, 1] * (np.cos(hi) - np.cos(lo))
    value = 2.0 * math.fsum(pieces) / k
    return SlicedEstimate(max(value, 0.0), EXACT_2D)


def sw1(alpha, beta, method="auto", num_samples=100_000, seed=0, workers=None):
    """Dispatch to the exact planar algorithm or to Monte-Carlo.

    ``method`` is ``"exact_2d"``, ``"monte_carlo"`` or ``"auto"`` (exact when
    ``n == 2``).
    """
    if method == "auto":
        method = EXACT_2D if alpha.n == 2 else MONTE_CARLO
    if method == EXACT_2D:
        return sw1_exact_2d(alpha, beta)
    if method == MONTE_CARLO:
        return sw1_monte_carlo(alpha, beta, num_samples, seed, workers)
    raise ValueError(f"unknown method {method!r}")


def _w1_slice(alpha, beta, theta):
    # reference path for a single direction, used in tests and docs
    return w1_line(project(alpha, theta), project(beta, theta))[0]
