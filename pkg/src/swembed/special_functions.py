"""Beta-family special functions and the hyperspherical cap distribution.

For ``x`` uniform on the unit sphere ``S^{n-1}`` in ``R^n`` the absolute
first coordinate ``|x_1|`` has a Beta-type law.  Everything here is
expressed through the Beta function ``B((n-1)/2, 1/2)`` and the
regularized incomplete Beta function.

``kappa(n)`` is the integral of ``|x_1|`` over the whole sphere (with the
unnormalized surface measure), i.e. the exact ratio between the sliced
and the plain 1-Wasserstein distance of two Dirac masses.
"""

import math

import numpy as np

__all__ = [
    "beta",
    "log_beta",
    "reg_inc_beta",
    "sphere_area",
    "log_sphere_area",
    "kappa",
    "cap_density",
    "cap_cdf",
    "cap_expectation",
    "check_beta_inequality",
]

_CF_EPS = 1e-15
_CF_TINY = 1e-300
_CF_MAXIT = 20000


def _check_positive(**kwargs):
    for name, value in kwargs.items():
        if not value > 0:
            raise ValueError(f"{name} must be positive, got {value!r}")


def _check_dimension(n, minimum=2):
    if int(n) != n or n < minimum:
        raise ValueError(f"dimension n must be an integer >= {minimum}, got {n!r}")
    return int(n)


def log_beta(a, b):
    """Natural logarithm of the Beta function, via ``lgamma``."""
    _check_positive(a=a, b=b)
    return math.lgamma(a) + math.lgamma(b) - math.lgamma(a + b)


def beta(a, b):
    """Beta function ``B(a, b) = Gamma(a) Gamma(b) / Gamma(a + b)``.

    Evaluated in log space so large arguments do not overflow.

    Raises
    ------
    ValueError
        If ``a <= 0`` or ``b <= 0``.
    """
    return math.exp(log_beta(a, b))


def _betacf(x, a, b):
    # Modified Lentz evaluation of the continued fraction for I(x; a, b),
    # vectorized over x (and elementwise a, b).
    qab = a + b
    qap = a + 1.0
    qam = a - 1.0
    c = np.ones_like(x)
    d = 1.0 - qab * x / qap
    d = np.where(np.abs(d) < _CF_TINY, _CF_TINY, d)
    d = 1.0 / d
    h = d.copy()
    for m in range(1, _CF_MAXIT + 1):
        m2 = 2 * m
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        d = np.where(np.abs(d) < _CF_TINY, _CF_TINY, d)
        c = 1.0 + aa / c
        c = np.where(np.abs(c) < _CF_TINY, _CF_TINY, c)
        d = 1.0 / d
        h *= d * c
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        d = np.where(np.abs(d) < _CF_TINY, _CF_TINY, d)
        c = 1.0 + aa / c
        c = np.where(np.abs(c) < _CF_TINY, _CF_TINY, c)
        d = 1.0 / d
        delta = d * c
        h *= delta
        if np.all(np.abs(delta - 1.0) < _CF_EPS):
            return h
    raise RuntimeError(
        f"incomplete beta continued fraction did not converge (a={a!r}, b={b!r})"
    )


def reg_inc_beta(x, a, b):
    """Regularized incomplete Beta function ``I(x; a, b)``.

    Parameters
    ----------
    x : float or array_like
        Evaluation point(s) in ``[0, 1]``.
    a, b : float
        Positive shape parameters.

    Returns
    -------
    float or ndarray
        ``I(x; a, b)``; a float when ``x`` is a scalar.

    Notes
    -----
    Uses the continued-fraction expansion, switching to
    ``1 - I(1 - x; b, a)`` when ``x > (a + 1) / (a + b + 2)`` so the
    fraction always converges quickly.
    """
    _check_positive(a=a, b=b)
    scalar = np.ndim(x) == 0
    x = np.asarray(x, dtype=float)
    if np.any(np.isnan(x)) or np.any(x < 0.0) or np.any(x > 1.0):
        raise ValueError("x must lie in [0, 1]")
    x = np.atleast_1d(x)
    out = np.empty_like(x)
    out[x == 0.0] = 0.0
    out[x == 1.0] = 1.0
    inner = (x > 0.0) & (x < 1.0)
    if np.any(inner):
        xi = x[inner]
        lbeta = log_beta(a, b)
        swap = xi > (a + 1.0) / (a + b + 2.0)
        res = np.empty_like(xi)

        direct = ~swap
        if np.any(direct):
            xd = xi[direct]
            front = np.exp(a * np.log(xd) + b * np.log1p(-xd) - lbeta) / a
            res[direct] = front * _betacf(xd, a, b)
        if np.any(swap):
            xs = 1.0 - xi[swap]
            front = np.exp(b * np.log(xs) + a * np.log1p(-xs) - lbeta) / b
            res[swap] = 1.0 - front * _betacf(xs, b, a)
        out[inner] = np.clip(res, 0.0, 1.0)
    if scalar:
        return float(out[0])
    return out.reshape(np.shape(x))


def log_sphere_area(n):
    n = _check_dimension(n, minimum=1)
    return math.log(2.0) + 0.5 * n * math.log(math.pi) - math.lgamma(0.5 * n)


def sphere_area(n):
    """Surface area ``S_{n-1} = 2 pi^{n/2} / Gamma(n/2)`` of the unit sphere in ``R^n``.

    ``sphere_area(2) == 2*pi`` (circle), ``sphere_area(3) == 4*pi``.
    """
    n = _check_dimension(n)
    return math.exp(log_sphere_area(n))


def kappa(n):
    """Integral of ``|x_1|`` over the unit sphere ``S^{n-1}``.

    ``kappa(n) = 2 S_{n-1} / ((n - 1) B((n-1)/2, 1/2))``, so ``kappa(2) = 4``
    and ``kappa(3) = 2*pi``.
    """
    n = _check_dimension(n)
    log_k = (
        math.log(2.0)
        + log_sphere_area(n)
        - math.log(n - 1)
        - log_beta(0.5 * (n - 1), 0.5)
    )
    return math.exp(log_k)


def _cap_shape(n):
    return 0.5 * (n - 1), 0.5


def cap_density(n, t):
    """Density of ``|x_1|`` for ``x`` uniform on ``S^{n-1}``, ``n >= 3``.

    ``f(t) = 2 (1 - t^2)^{(n-3)/2} / B((n-1)/2, 1/2)`` on ``[0, 1]``.
    """
    n = _check_dimension(n, minimum=3)
    scalar = np.ndim(t) == 0
    t = np.asarray(t, dtype=float)
    if np.any(np.isnan(t)) or np.any(t < 0.0) or np.any(t > 1.0):
        raise ValueError("t must lie in [0, 1]")
    a, b = _cap_shape(n)
    out = 2.0 * np.power(1.0 - t * t, a - 1.0) / beta(a, b)
    return float(out) if scalar else out


def cap_cdf(n, t):
    """Distribution function ``P(|x_1| <= t) = 1 - I(1 - t^2; (n-1)/2, 1/2)``."""
    n = _check_dimension(n, minimum=3)
    t = np.asarray(t, dtype=float)
    if np.any(np.isnan(t)) or np.any(t < 0.0) or np.any(t > 1.0):
        raise ValueError("t must lie in [0, 1]")
    if t.ndim == 0:
        t = float(t)
    a, b = _cap_shape(n)
    return 1.0 - reg_inc_beta(1.0 - t * t, a, b)


def cap_expectation(n):
    """Mean of ``|x_1|`` for ``x`` uniform on ``S^{n-1}``: ``2 / ((n-1) B((n-1)/2, 1/2))``."""
    n = _check_dimension(n, minimum=3)
    a, b = _cap_shape(n)
    return 2.0 / ((n - 1) * beta(a, b))


def check_beta_inequality(n, grid=None):
    """Check ``1 - I(1 - x^2; (n-1)/2, 1/2) <= 2e (n-1) x B((n-1)/2, 1/2)`` on a grid.

    Parameters
    ----------
    n : int
        Dimension, ``n >= 3``.
    grid : array_like, optional
        Points of ``[0, 1]``; defaults to 1001 uniform points including
        both endpoints.

    Returns
    -------
    bool
        True iff the inequality holds at every grid point up to ``1e-12``.
    """
    n = _check_dimension(n, minimum=3)
    if grid is None:
        grid = np.linspace(0.0, 1.0, 1001)
    x = np.asarray(grid, dtype=float)
    a, b = _cap_shape(n)
    lhs = cap_cdf(n, x)
    rhs = 2.0 * math.e * (n - 1) * x * beta(a, b)
    return bool(np.all(lhs <= rhs + 1e-12))
