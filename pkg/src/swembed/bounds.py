"""Randomized checks of the sliced/plain Wasserstein sandwich bounds.

For empirical measures of size ``k`` in ``R^n``, ``n >= 3``::

    kappa(n) W_1 / (16 e (k!)^2)  <=  SW_1  <=  kappa(n) W_1

and in the plane, for the sphere-averaged sliced distance ``SW_1 / (2 pi)``::

    W_1 / (2 (k(k-1) + 1))  <=  SW_1 / (2 pi)  <=  W_1

Monte-Carlo values are given 4 standard errors of slack on the side that
favours the bound; exact values get a relative slack of ``1e-9``.
"""

import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Optional

import numpy as np

from .measures import w1
from .sampling import DISTRIBUTIONS, block_rng, instance_seed_sequence, random_measure_pair
from .sliced import sw1_exact_2d, sw1_monte_carlo
from .special_functions import cap_cdf, kappa, sphere_area

__all__ = [
    "SIGMA_SLACK",
    "EXACT_SLACK",
    "BoundReport",
    "CampaignConfig",
    "lower_constant",
    "lower_constant_2d",
    "check_sandwich",
    "check_sandwich_2d",
    "band_integral_lower_bound",
    "run_campaign",
]

SIGMA_SLACK = 4.0
EXACT_SLACK = 1e-9


def lower_constant(k):
    """``1 / (16 e (k!)^2)``, the lower sandwich factor for ``n >= 3``."""
    return 1.0 / (16.0 * math.e * math.factorial(k) ** 2)


def lower_constant_2d(k):
    """``1 / (2 (k(k-1) + 1))``, the planar lower factor."""
    return 1.0 / (2.0 * (k * (k - 1) + 1))


@dataclass
class BoundReport:
    """Aggregate of per-instance bound checks.

    ``min_ratio`` / ``max_ratio`` are taken over ``SW_1 / (kappa(n) W_1)``
    (``SW_1 / (2 pi W_1)`` for planar reports) and are None for an empty
    report.
    """

    instance_count: int = 0
    violations: int = 0
    lower_violations: int = 0
    upper_violations: int = 0
    min_ratio: Optional[float] = None
    max_ratio: Optional[float] = None
    config: dict = field(default_factory=dict)

    def add(self, lower_ok, upper_ok, ratio):
        ratio = float(ratio)
        self.instance_count += 1
        self.lower_violations += not lower_ok
        self.upper_violations += not upper_ok
        self.violations += not (lower_ok and upper_ok)
        self.min_ratio = ratio if self.min_ratio is None else min(self.min_ratio, ratio)
        self.max_ratio = ratio if self.max_ratio is None else max(self.max_ratio, ratio)

    def to_dict(self):
        return asdict(self)

    def to_json(self):
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)


def check_sandwich(alpha, beta, sw):
    """Check the ``n >= 3`` sandwich for one pair and a sliced estimate ``sw`` of it.

    Returns
    -------
    lower_ok, upper_ok : bool
    ratio : float
        ``sw.value / (kappa(n) W_1)``, or 1 when ``W_1 == 0``.
    """
    n, k = alpha.n, alpha.k
    if n < 3:
        raise ValueError("check_sandwich needs n >= 3; use check_sandwich_2d in the plane")
    dist, _ = w1(alpha, beta)
    if dist == 0.0:
        return True, True, 1.0
    upper = kappa(n) * dist
    lower = lower_constant(k) * upper
    slack = SIGMA_SLACK * sw.std_error
    lower_ok = sw.value + slack >= lower * (1.0 - EXACT_SLACK)
    upper_ok = sw.value - slack <= upper * (1.0 + EXACT_SLACK)
    return bool(lower_ok), bool(upper_ok), sw.value / upper


def check_sandwich_2d(alpha, beta):
    """Check the planar sandwich with the exact sliced distance, sphere-averaged.

    Returns ``(lower_ok, upper_ok, ratio)`` with ``ratio = SW_1 / (2 pi W_1)``
    (1 when ``W_1 == 0``).
    """
    if alpha.n != 2:
        raise ValueError(f"check_sandwich_2d needs n = 2, got n = {alpha.n}")
    dist, _ = w1(alpha, beta)
    sw = sw1_exact_2d(alpha, beta).value / sphere_area(2)
    if dist == 0.0:
        return True, True, 1.0
    lower_ok = sw >= lower_constant_2d(alpha.k) * dist * (1.0 - EXACT_SLACK)
    upper_ok = sw <= dist * (1.0 + EXACT_SLACK)
    return bool(lower_ok), bool(upper_ok), sw / dist


def _band_integrand(n, v, t_band, num_samples, seed):
    # Points of the band are x = (+-s, sqrt(1 - s^2) y) with s in [t_band, 1]
    # and y on S^{n-2}; the surface element is S_{n-2} (1 - s^2)^{(n-3)/2} ds
    # times the uniform measure on y.  Drawing s uniformly and averaging the
    # two signs of x_1 gives an unbiased estimator whose samples all lie in
    # the band, however thin it is.
    rng = block_rng(seed, 0)
    s = rng.uniform(t_band, 1.0, num_samples)
    y = rng.standard_normal((num_samples, n - 1))
    y /= np.linalg.norm(y, axis=1, keepdims=True)
    rest = np.sqrt(1.0 - s * s) * (y @ v[1:])
    both_signs = np.abs(s * v[0] + rest) + np.abs(-s * v[0] + rest)
    weight = (1.0 - s * s) ** (0.5 * (n - 3))
    return sphere_area(n - 1) * (1.0 - t_band) * weight * both_signs


def band_integral_lower_bound(n, v, t_band, num_samples=200_000, seed=0):
    """Check ``int_Omega |<x, v>| dx >= c^2 |v| kappa(n) / (16 e)`` on a band.

    ``Omega = {x in S^{n-1} : |x_1| >= t_band}`` has area fraction
    ``c = 1 - cap_cdf(n, t_band)``.  The left side is a Monte-Carlo
    integral over the band itself (every sample lies in ``Omega``), accepted
    within 4 standard errors.

    Returns
    -------
    lhs, rhs : float
    ok : bool
    """
    if n < 3:
        raise ValueError("band bound needs n >= 3")
    v = np.asarray(v, dtype=float).ravel()
    if v.size != n:
        raise ValueError(f"v must have length {n}, got {v.size}")
    if not 0.0 <= t_band < 1.0:
        raise ValueError(f"band {{|x_1| >= {t_band}}} is empty; need 0 <= t_band < 1")
    num_samples = int(num_samples)
    if num_samples < 2:
        raise ValueError("num_samples must be at least 2")
    c = 1.0 - cap_cdf(n, t_band)
    rhs = c * c * float(np.linalg.norm(v)) * kappa(n) / (16.0 * math.e)
    integrand = _band_integrand(n, v, t_band, num_samples, seed)
    lhs = float(np.mean(integrand))
    se = float(np.std(integrand, ddof=1)) / math.sqrt(num_samples)
    ok = lhs + SIGMA_SLACK * se >= rhs * (1.0 - EXACT_SLACK)
    return lhs, rhs, bool(ok)


@dataclass(frozen=True)
class CampaignConfig:
    """Parameters of a randomized bound-checking campaign.

    ``n == 2`` runs the exact planar check; ``n >= 3`` uses Monte-Carlo
    with ``num_samples`` directions per instance.
    """

    n: int
    k: int
    trials: int
    seed: int = 0
    distribution: str = "gaussian"
    num_samples: int = 20_000

    def __post_init__(self):
        if self.n < 2:
            raise ValueError(f"n must be >= 2, got {self.n}")
        if self.k < 1:
            raise ValueError(f"k must be >= 1, got {self.k}")
        if self.trials < 0:
            raise ValueError(f"trials must be >= 0, got {self.trials}")
        if self.num_samples < 1:
            raise ValueError(f"num_samples must be >= 1, got {self.num_samples}")
        if not 0 <= self.seed < 1 << 64:
            raise ValueError(f"seed must be an unsigned 64-bit integer, got {self.seed}")
        if self.distribution not in DISTRIBUTIONS:
            raise ValueError(
                f"unknown distribution {self.distribution!r}; expected one of {DISTRIBUTIONS}"
            )


def _run_instance(config, index):
    ss = instance_seed_sequence(config.seed, index)
    rng = np.random.default_rng(ss)
    alpha, beta = random_measure_pair(rng, config.distribution, config.n, config.k)
    if config.n == 2:
        return check_sandwich_2d(alpha, beta)
    mc_seed = int(ss.generate_state(1, dtype=np.uint64)[0])
    sw = sw1_monte_carlo(alpha, beta, config.num_samples, mc_seed)
    return check_sandwich(alpha, beta, sw)


def run_campaign(config, workers=None):
    """Run ``config.trials`` random instances and aggregate them.

    Instance ``i`` is seeded from ``(config.seed, i)`` alone, and results
    are folded in index order, so the report does not depend on
    ``workers``.
    """
    indices = range(config.trials)
    if workers is not None and workers > 1 and config.trials > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(lambda i: _run_instance(config, i), indices))
    else:
        results = [_run_instance(config, i) for i in indices]
    report = BoundReport(config=asdict(config))
    for lower_ok, upper_ok, ratio in results:
        report.add(lower_ok, upper_ok, ratio)
    return report
