"""
Sliced distance in the plane: exact arcs versus random directions
=================================================================

In the plane the order of the projected points only changes at finitely
many angles, so the sliced distance is a finite sum of closed-form arc
integrals.  In higher dimensions it is estimated from random directions.
Values here are unnormalized sphere integrals: divide by ``2 pi`` in the
plane for the average over directions.
"""

import numpy as np

from swembed.measures import EmpiricalMeasure, w1
from swembed.sliced import critical_angles, sw1_exact_2d, sw1_monte_carlo

rng = np.random.default_rng(0)
alpha = EmpiricalMeasure(rng.normal(size=(4, 2)))
beta = EmpiricalMeasure(rng.normal(size=(4, 2)) + [1.0, 0.5])

angles = critical_angles(np.concatenate([alpha.points, beta.points]))
print(f"{angles.size} critical angles in [0, pi)")

exact = sw1_exact_2d(alpha, beta).value
print(f"exact SW1: {exact:.10f}")

# The Monte-Carlo error shrinks like 1 / sqrt(N).
for num in (1_000, 16_000, 256_000):
    est = sw1_monte_carlo(alpha, beta, num, seed=7)
    print(f"N = {num:>7}: {est.value:.6f} +- {est.std_error:.6f}   (|error| = {abs(est.value - exact):.2e})")

# The ratio to W1 sits between the planar bounds once normalized by 2 pi.
print("SW1 / (2 pi W1):", exact / (2 * np.pi) / w1(alpha, beta)[0])

# Results do not depend on the number of worker threads.
a3 = EmpiricalMeasure(rng.normal(size=(5, 3)))
b3 = EmpiricalMeasure(rng.normal(size=(5, 3)))
one = sw1_monte_carlo(a3, b3, 50_000, seed=1, workers=1)
four = sw1_monte_carlo(a3, b3, 50_000, seed=1, workers=4)
print("\n1 thread vs 4 threads identical:", one == four)
