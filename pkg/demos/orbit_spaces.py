"""
Orbit spaces as spaces of measures
==================================

For a finite group acting by isometries, the distance between two orbits
is the 1-Wasserstein distance between the uniform measures on the orbits.
Unordered k-tuples are the special case of the symmetric group permuting
blocks.
"""

import numpy as np

from swembed.measures import EmpiricalMeasure, w1
from swembed.orbit import (
    OrbitPoint,
    block_l1_distance,
    block_permutation_group,
    check_isometric_reduction,
    dihedral_group,
    quotient_distance,
)

group = dihedral_group(4)  # symmetries of the square
x = OrbitPoint([1.0, 0.2], group)
y = OrbitPoint([-0.3, 0.9], group)
lhs, rhs, ok = check_isometric_reduction(x, y)
print(f"orbit distance {lhs:.12f}  W1 of orbit measures {rhs:.12f}  equal: {ok}")

# Any representative of an orbit gives the same distance.
for g in list(group)[:3]:
    moved = OrbitPoint(g(x.representative), group)
    print("  moved representative:", round(quotient_distance(moved, y), 12))

# Unordered triples of points in the plane: S_3 permuting the blocks of R^6,
# with the sum of block distances.  The quotient distance is 3 W1.
rng = np.random.default_rng(2)
a, b = rng.normal(size=(3, 2)), rng.normal(size=(3, 2))
sym = block_permutation_group(2, 3)
d = quotient_distance(OrbitPoint(a.ravel(), sym), OrbitPoint(b.ravel(), sym), block_l1_distance(2))
print("\nunordered triples:", round(d, 12), " 3 W1:", round(3 * w1(EmpiricalMeasure(a), EmpiricalMeasure(b))[0], 12))
