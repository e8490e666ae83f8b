"""
Placing measures in Euclidean space
===================================

``f = SW_1 / kappa(n)`` is negative semi-definite, so any finite family of
measures has coordinates with ``|phi_i - phi_j|^2 = f_ij``.  Classical scaling
produces them.  The squared embedded distances stay within the control
functions of the plain W1 distance.
"""

import numpy as np

from swembed.embedding import (
    build_kernel,
    check_control_functions,
    check_negative_semidefinite,
    embed_finite_set,
)
from swembed.measures import EmpiricalMeasure

rng = np.random.default_rng(5)
measures = [EmpiricalMeasure(rng.normal(size=(3, 2)) + rng.normal(size=2)) for _ in range(12)]

kernel = build_kernel(measures)  # exact arcs in the plane
ok, worst = check_negative_semidefinite(kernel)
print("negative semi-definite:", ok, " largest violation:", worst)

result = embed_finite_set(kernel)
print("embedding dimension:", result.dimension, "of", len(measures) - 1, "possible")
print("leading Gram eigenvalues:", np.round(result.eigenvalues[:4], 4))
error = np.max(np.abs(result.squared_distances() - kernel.values))
print("max |d^2 - f|:", error)

report = check_control_functions(measures, result)
print(f"control functions: {report.violations} violations over {report.instance_count} pairs,")
print(f"  d^2 / W1 ranges over [{report.min_ratio:.3f}, {report.max_ratio:.3f}]")
