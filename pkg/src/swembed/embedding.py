"""Hilbert-space coordinates for finite sets of empirical measures.

The kernel ``f(alpha, beta) = SW_1(alpha, beta) / kappa(n)`` is negative
semi-definite, so any finite family of measures can be placed in a
Euclidean space with ``|phi_i - phi_j|^2 = f_ij``.  The coordinates come
from classical scaling: double-center ``f`` into a Gram matrix and take
its positive spectral part.
"""

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .bounds import SIGMA_SLACK, BoundReport, lower_constant, lower_constant_2d
from .measures import MeasureMismatchError, w1
from .sampling import sphere_directions
from .sliced import EXACT_2D, MONTE_CARLO, slice_distances, sw1_exact_2d
from .special_functions import kappa, sphere_area

__all__ = [
    "NSD_TOL",
    "RETAIN_TOL",
    "KernelMatrix",
    "EmbeddingResult",
    "NotNegativeSemidefiniteError",
    "build_kernel",
    "double_center",
    "check_negative_semidefinite",
    "embed_finite_set",
    "check_control_functions",
]

NSD_TOL = 1e-8
RETAIN_TOL = 1e-12


class NotNegativeSemidefiniteError(ValueError):
    """Kernel fails negative semi-definiteness beyond tolerance."""


@dataclass(frozen=True)
class KernelMatrix:
    """Symmetric kernel with zero diagonal.

    ``std_errors`` holds per-entry Monte-Carlo standard errors (in kernel
    units) or is None for exactly computed kernels.
    """

    values: np.ndarray
    std_errors: Optional[np.ndarray] = None

    def __post_init__(self):
        f = np.array(self.values, dtype=float)
        if f.ndim != 2 or f.shape[0] != f.shape[1]:
            raise ValueError(f"kernel must be square, got shape {f.shape}")
        if not np.array_equal(f, f.T):
            raise ValueError("kernel must be symmetric")
        if np.any(np.diag(f) != 0.0):
            raise ValueError("kernel must have a zero diagonal")
        f.setflags(write=False)
        object.__setattr__(self, "values", f)
        if self.std_errors is not None:
            se = np.array(self.std_errors, dtype=float)
            se.setflags(write=False)
            object.__setattr__(self, "std_errors", se)

    @property
    def size(self):
        return self.values.shape[0]

    @property
    def max_std_error(self):
        return 0.0 if self.std_errors is None else float(np.max(self.std_errors, initial=0.0))


@dataclass(frozen=True)
class EmbeddingResult:
    """Coordinates ``phi_i`` (rows) realizing a kernel as squared distances."""

    coordinates: np.ndarray
    eigenvalues: np.ndarray
    clipped_mass: float
    kernel: Optional[KernelMatrix] = None

    @property
    def dimension(self):
        return self.coordinates.shape[1]

    def squared_distances(self):
        x = self.coordinates
        sq = np.sum(x * x, axis=1)
        d2 = sq[:, None] + sq[None, :] - 2.0 * x @ x.T
        np.fill_diagonal(d2, 0.0)
        return np.maximum(d2, 0.0)

    def to_dict(self):
        return {
            "coordinates": self.coordinates.tolist(),
            "eigenvalues": self.eigenvalues.tolist(),
            "clipped_mass": float(self.clipped_mass),
        }


def build_kernel(measures, method="auto", num_samples=100_000, seed=0):
    """Kernel ``f_ij = SW_1(alpha_i, alpha_j) / kappa(n)`` over a list of measures.

    ``method`` is ``"exact_2d"``, ``"monte_carlo"`` or ``"auto"``.  The
    Monte-Carlo variant evaluates every pair on one common set of
    directions, which keeps the estimated kernel itself negative
    semi-definite (it is an average of 1-D Wasserstein kernels).
    """
    measures = list(measures)
    if not measures:
        raise ValueError("need at least one measure")
    n, k = measures[0].n, measures[0].k
    for mu in measures[1:]:
        if mu.n != n:
            raise MeasureMismatchError("n", n, mu.n)
        if mu.k != k:
            raise MeasureMismatchError("k", k, mu.k)
    if method == "auto":
        method = EXACT_2D if n == 2 else MONTE_CARLO
    m = len(measures)
    f = np.zeros((m, m))
    se = None
    scale = kappa(n)
    if method == EXACT_2D:
        for i in range(m):
            for j in range(i + 1, m):
                f[i, j] = f[j, i] = sw1_exact_2d(measures[i], measures[j]).value / scale
    elif method == MONTE_CARLO:
        se = np.zeros((m, m))
        dirs = sphere_directions(n, num_samples, seed)
        factor = sphere_area(n) / scale
        for i in range(m):
            for j in range(i + 1, m):
                s = slice_distances(measures[i], measures[j], dirs)
                f[i, j] = f[j, i] = factor * float(np.mean(s))
                if num_samples > 1:
                    se[i, j] = se[j, i] = (
                        factor * float(np.std(s, ddof=1)) / math.sqrt(num_samples)
                    )
    else:
        raise ValueError(f"unknown method {method!r}")
    return KernelMatrix(f, se)


def double_center(f):
    """Gram matrix ``G = -1/2 J f J`` with ``J = I - 11^T / m``."""
    f = np.asarray(f, dtype=float)
    g = -0.5 * f
    g = g - g.mean(axis=0, keepdims=True)
    g = g - g.mean(axis=1, keepdims=True)
    return 0.5 * (g + g.T)


def _nsd_allowance(kernel, g_norm, tol):
    # Monte-Carlo kernels get extra room: an entrywise perturbation of size
    # 4 se moves eigenvalues of G by at most 2 m * 4 se / 2.
    return tol * g_norm + SIGMA_SLACK * kernel.size * kernel.max_std_error


def check_negative_semidefinite(f, tol=NSD_TOL):
    """Test ``a^T f a <= 0`` for every zero-sum ``a``.

    Parameters
    ----------
    f : KernelMatrix or array_like
    tol : float
        Relative tolerance: passes iff the smallest eigenvalue of the
        double-centered Gram matrix is ``>= -tol * |G|_2`` (plus the
        Monte-Carlo allowance for estimated kernels).

    Returns
    -------
    ok : bool
    max_centered_eigenvalue : float
        Largest eigenvalue of ``-G``; positive values measure the violation.
    """
    kernel = f if isinstance(f, KernelMatrix) else KernelMatrix(f)
    g = double_center(kernel.values)
    eig = np.linalg.eigvalsh(g)
    g_norm = float(np.max(np.abs(eig), initial=0.0))
    worst = float(-eig[0]) if eig.size else 0.0
    ok = worst <= _nsd_allowance(kernel, g_norm, tol)
    return bool(ok), worst


def embed_finite_set(f, tol=NSD_TOL):
    """Coordinates whose squared pairwise distances reproduce ``f``.

    Eigenvalues of the Gram matrix above ``1e-12 |G|_2`` are kept; the rest
    are dropped and the absolute value of the negative ones is reported as
    ``clipped_mass``.  Squared distances then match ``f`` within about
    ``2 * clipped_mass`` plus rounding.

    Raises
    ------
    NotNegativeSemidefiniteError
        If ``f`` fails :func:`check_negative_semidefinite` at ``tol``.
    """
    kernel = f if isinstance(f, KernelMatrix) else KernelMatrix(f)
    g = double_center(kernel.values)
    eig, vec = np.linalg.eigh(g)
    order = np.argsort(eig)[::-1]
    eig, vec = eig[order], vec[:, order]
    g_norm = float(np.max(np.abs(eig), initial=0.0))
    if eig.size and -eig[-1] > _nsd_allowance(kernel, g_norm, tol):
        raise NotNegativeSemidefiniteError(
            f"kernel is not negative semi-definite: centered eigenvalue {eig[-1]:.3e}"
        )
    keep = eig > RETAIN_TOL * g_norm
    clipped = float(-np.sum(eig[eig < 0.0]))
    coords = vec[:, keep] * np.sqrt(eig[keep])
    return EmbeddingResult(coords, eig, clipped, kernel)


def check_control_functions(measures, result):
    """Check ``rho_-(W_1) <= |phi_i - phi_j|^2 <= W_1`` for every pair.

    ``rho_-(w) = w / (16 e (k!)^2)`` for ``n >= 3`` and
    ``w / (2 (k(k-1) + 1))`` in the plane.  Squared distances are compared
    so the check is free of square roots.  Slack per pair: 4 Monte-Carlo
    standard errors (when the kernel carries them), ``1e-8 max f`` and
    twice the clipped spectral mass.

    Returns
    -------
    BoundReport
        Ratios are ``|phi_i - phi_j|^2 / W_1``.
    """
    measures = list(measures)
    m = len(measures)
    if m != result.coordinates.shape[0]:
        raise ValueError(f"{m} measures but {result.coordinates.shape[0]} embedded points")
    n, k = measures[0].n, measures[0].k
    low = lower_constant_2d(k) if n == 2 else lower_constant(k)
    d2 = result.squared_distances()
    kernel = result.kernel
    fmax = float(np.max(kernel.values, initial=0.0)) if kernel is not None else float(np.max(d2))
    base_slack = NSD_TOL * fmax + 2.0 * result.clipped_mass
    report = BoundReport(config={"n": n, "k": k, "pairs": m * (m - 1) // 2})
    for i in range(m):
        for j in range(i + 1, m):
            dist, _ = w1(measures[i], measures[j])
            slack = base_slack
            if kernel is not None and kernel.std_errors is not None:
                slack += SIGMA_SLACK * kernel.std_errors[i, j]
            lower_ok = d2[i, j] + slack >= low * dist
            upper_ok = d2[i, j] - slack <= dist
            ratio = d2[i, j] / dist if dist > 0.0 else 1.0
            report.add(bool(lower_ok), bool(upper_ok), ratio)
    return report
