"""Reproducible random directions and point clouds.

Directions on the sphere come from a counter-based generator: sample ``i``
lives in block ``i // BLOCK_SIZE``, and each block is drawn from a Philox
stream keyed by ``(seed, block)``.  Blocks can therefore be produced
independently by any number of workers without changing the result.
"""

import numpy as np

from .measures import EmpiricalMeasure

__all__ = [
    "BLOCK_SIZE",
    "DISTRIBUTIONS",
    "block_rng",
    "sphere_block",
    "sphere_directions",
    "instance_seed_sequence",
    "random_measure",
    "random_measure_pair",
]

BLOCK_SIZE = 4096
DISTRIBUTIONS = ("gaussian", "cube", "clustered")

_UINT64 = 1 << 64


def _check_seed(seed):
    seed = int(seed)
    if not 0 <= seed < _UINT64:
        raise ValueError(f"seed must be an unsigned 64-bit integer, got {seed}")
    return seed


def block_rng(seed, block):
    """Generator for one block of the counter-based stream."""
    key = np.array([_check_seed(seed), int(block)], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))


def sphere_block(n, seed, block):
    """The ``BLOCK_SIZE`` unit vectors of block ``block``, shape ``(BLOCK_SIZE, n)``."""
    g = block_rng(seed, block).standard_normal((BLOCK_SIZE, n))
    g /= np.linalg.norm(g, axis=1, keepdims=True)
    return g


def sphere_directions(n, num_samples, seed):
    """First ``num_samples`` directions of the stream, uniform on ``S^{n-1}``."""
    nblocks = -(-num_samples // BLOCK_SIZE)
    out = np.concatenate([sphere_block(n, seed, b) for b in range(nblocks)])
    return out[:num_samples]


def instance_seed_sequence(seed, index):
    """Seed sequence for instance ``index`` of a campaign seeded with ``seed``."""
    return np.random.SeedSequence([_check_seed(seed), int(index)])


def _draw_points(rng, distribution, n, k, centers=None):
    if distribution == "gaussian":
        return rng.standard_normal((k, n))
    if distribution == "cube":
        return rng.uniform(-1.0, 1.0, size=(k, n))
    if distribution == "clustered":
        labels = rng.integers(0, len(centers), size=k)
        return centers[labels] + 0.05 * rng.standard_normal((k, n))
    raise ValueError(
        f"unknown distribution {distribution!r}; expected one of {DISTRIBUTIONS}"
    )


def _cluster_centers(rng, n):
    ncenters = int(rng.integers(1, 4))
    return 2.0 * rng.standard_normal((ncenters, n))


def random_measure(rng, distribution, n, k):
    """One random empirical measure of size ``k`` in ``R^n``."""
    centers = _cluster_centers(rng, n) if distribution == "clustered" else None
    return EmpiricalMeasure(_draw_points(rng, distribution, n, k, centers))


def random_measure_pair(rng, distribution, n, k):
    """Two independent measures; ``clustered`` pairs share their cluster centers.

    Shared centers put the two supports close together, which produces many
    nearly tied matchings.
    """
    centers = _cluster_centers(rng, n) if distribution == "clustered" else None
    alpha = EmpiricalMeasure(_draw_points(rng, distribution, n, k, centers))
    beta = EmpiricalMeasure(_draw_points(rng, distribution, n, k, centers))
    return alpha, beta
