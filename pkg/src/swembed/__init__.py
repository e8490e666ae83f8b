"""Exact and sliced 1-Wasserstein distances of empirical measures.

Modules
-------
special_functions
    Beta functions, ``kappa(n)`` and the hyperspherical cap law.
measures
    Empirical measures, exact ``W_1`` by optimal assignment, pushforwards.
sliced
    Sliced ``W_1`` (unnormalized sphere integral): Monte-Carlo and exact 2D.
bounds
    Randomized checks of the ``SW_1`` / ``W_1`` sandwich bounds.
embedding
    Negative semi-definite kernels and explicit Hilbert coordinates.
orbit
    Finite isometry groups and their quotient metrics.
"""

from .bounds import BoundReport, CampaignConfig, check_sandwich, check_sandwich_2d, run_campaign
from .embedding import (
    EmbeddingResult,
    KernelMatrix,
    build_kernel,
    check_control_functions,
    check_negative_semidefinite,
    embed_finite_set,
)
from .measures import EmpiricalMeasure, Matching, MeasureMismatchError, pushforward, w1, w1_line
from .orbit import (
    AffineIsometry,
    FiniteIsometryGroup,
    OrbitPoint,
    check_isometric_reduction,
    orbit_measure,
    quotient_distance,
)
from .sliced import SlicedEstimate, project, sw1, sw1_exact_2d, sw1_monte_carlo
from .special_functions import (
    beta,
    cap_cdf,
    cap_density,
    cap_expectation,
    kappa,
    reg_inc_beta,
    sphere_area,
)

__version__ = "0.1.0"
