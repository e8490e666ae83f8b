"""
Sphere constants and hyperspherical caps
========================================

For a single pair of points the sliced distance is a fixed multiple of the
Euclidean distance, ``SW_1 = kappa(n) |x - y|``.  This script tabulates
``kappa(n)`` next to the sphere area and the mean of ``|x_1|``, then checks
the cap distribution against sampled directions.
"""

import numpy as np

from swembed.sampling import sphere_directions
from swembed.special_functions import cap_cdf, cap_expectation, kappa, sphere_area

print(f"{'n':>3} {'sphere_area':>12} {'E|x_1|':>9} {'kappa':>9}")
for n in [2, 3, 4, 5, 8, 16, 32, 64]:
    mean = cap_expectation(n) if n >= 3 else 2 / np.pi
    print(f"{n:>3} {sphere_area(n):12.6f} {mean:9.6f} {kappa(n):9.6f}")

# kappa grows and then collapses with n because the sphere area does; the
# normalized mean E|x_1| decays like sqrt(2 / (pi n)).
n = 64
print("\nE|x_1| * sqrt(pi n / 2) at n = 64:", cap_expectation(n) * np.sqrt(np.pi * n / 2))

# |x_1| for uniform directions follows cap_cdf.  Compare a few quantiles.
n = 5
x = np.abs(sphere_directions(n, 200_000, seed=1)[:, 0])
for t in (0.1, 0.3, 0.5, 0.8):
    print(f"P(|x_1| <= {t}) sampled {np.mean(x <= t):.4f}  exact {cap_cdf(n, t):.4f}")
