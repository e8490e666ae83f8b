"""Finite groups of affine isometries of ``R^n`` and their orbit spaces.

For a finite group ``G = {g_1, ..., g_k}`` acting by isometries, the
quotient distance ``min_g |x - g y|`` equals the 1-Wasserstein distance
between the orbit measures ``(1/k) sum_i delta_{g_i x}`` and
``(1/k) sum_i delta_{g_i y}``, so the orbit space sits isometrically inside
the space of size-``k`` empirical measures.
"""

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .measures import EmpiricalMeasure, w1

__all__ = [
    "MATCH_TOL",
    "AffineIsometry",
    "FiniteIsometryGroup",
    "OrbitPoint",
    "generate",
    "trivial_group",
    "cyclic_group",
    "dihedral_group",
    "permutation_group",
    "sign_flip_group",
    "signed_permutation_group",
    "block_permutation_group",
    "block_l1_distance",
    "quotient_distance",
    "orbit_measure",
    "check_isometric_reduction",
]

MATCH_TOL = 1e-9
ORTHOGONALITY_TOL = 1e-10
MAX_GROUP_ORDER = 10_000


class AffineIsometry:
    """The map ``x -> rotation @ x + translation`` with ``rotation`` orthogonal."""

    __slots__ = ("rotation", "translation")

    def __init__(self, rotation, translation=None):
        q = np.array(rotation, dtype=float)
        if q.ndim != 2 or q.shape[0] != q.shape[1]:
            raise ValueError(f"rotation must be square, got shape {q.shape}")
        n = q.shape[0]
        t = np.zeros(n) if translation is None else np.array(translation, dtype=float).ravel()
        if t.shape != (n,):
            raise ValueError(f"translation must have length {n}, got {t.shape}")
        if np.max(np.abs(q.T @ q - np.eye(n))) > ORTHOGONALITY_TOL:
            raise ValueError("rotation is not orthogonal")
        q.setflags(write=False)
        t.setflags(write=False)
        self.rotation = q
        self.translation = t

    @classmethod
    def identity(cls, n):
        return cls(np.eye(n))

    @property
    def n(self):
        return self.rotation.shape[0]

    def __call__(self, x):
        """Apply to one point (shape ``(n,)``) or to rows of an ``(m, n)`` array."""
        x = np.asarray(x, dtype=float)
        return x @ self.rotation.T + self.translation

    def compose(self, other):
        """``self o other``: apply ``other`` first."""
        return AffineIsometry(
            self.rotation @ other.rotation,
            self.rotation @ other.translation + self.translation,
        )

    def inverse(self):
        qt = self.rotation.T
        return AffineIsometry(qt, -qt @ self.translation)

    def close_to(self, other, tol=MATCH_TOL):
        return (
            np.max(np.abs(self.rotation - other.rotation)) <= tol
            and np.max(np.abs(self.translation - other.translation), initial=0.0) <= tol
        )

    def __repr__(self):
        return f"AffineIsometry(rotation={self.rotation.tolist()}, translation={self.translation.tolist()})"


def _find(elements, g, tol=MATCH_TOL):
    for idx, h in enumerate(elements):
        if g.close_to(h, tol):
            return idx
    return None


class FiniteIsometryGroup:
    """An explicit list of affine isometries closed under composition and inverse.

    Construction checks the group axioms with the
    max-norm tolerance ``1e-9``; pass ``validate=False`` to skip this for
    lists already known to be groups.
    """

    def __init__(self, elements, validate=True):
        elements = list(elements)
        if not elements:
            raise ValueError("a group needs at least one element")
        n = elements[0].n
        if any(g.n != n for g in elements):
            raise ValueError("group elements act on different dimensions")
        self.elements = tuple(elements)
        self.n = n
        if validate:
            self._validate()

    def _validate(self):
        if _find(self.elements, AffineIsometry.identity(self.n)) is None:
            raise ValueError("group does not contain the identity")
        for g in self.elements:
            if _find(self.elements, g.inverse()) is None:
                raise ValueError("group is not closed under inverses")
        for g, h in itertools.product(self.elements, repeat=2):
            if _find(self.elements, g.compose(h)) is None:
                raise ValueError("group is not closed under composition")

    @property
    def order(self):
        return len(self.elements)

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def orbit(self, x):
        """Points ``g_1 x, ..., g_k x`` in element order, shape ``(k, n)``."""
        x = np.asarray(x, dtype=float).ravel()
        return np.stack([g(x) for g in self.elements])

    def conjugate(self, h):
        """The group ``h G h^{-1}``, e.g. rotations about a shifted center."""
        hinv = h.inverse()
        return FiniteIsometryGroup([h.compose(g).compose(hinv) for g in self.elements])

    def to_dict(self):
        return {
            "n": self.n,
            "elements": [
                {"rotation": g.rotation.tolist(), "translation": g.translation.tolist()}
                for g in self.elements
            ],
        }

    @classmethod
    def from_dict(cls, data):
        n = int(data["n"])
        elements = [
            AffineIsometry(e["rotation"], e.get("translation", [0.0] * n))
            for e in data["elements"]
        ]
        group = cls(elements)
        if group.n != n:
            raise ValueError(f"declared n = {n} but elements act on R^{group.n}")
        return group


def generate(generators, max_order=MAX_GROUP_ORDER):
    """Close a set of isometries under composition.

    Raises
    ------
    ValueError
        If the closure exceeds ``max_order`` elements.
    """
    generators = list(generators)
    if not generators:
        raise ValueError("need at least one generator")
    elements = [AffineIsometry.identity(generators[0].n)]
    frontier = list(elements)
    while frontier:
        new = []
        for g in frontier:
            for s in generators:
                h = s.compose(g)
                if _find(elements, h) is None:
                    elements.append(h)
                    new.append(h)
                    if len(elements) > max_order:
                        raise ValueError(f"group order exceeds {max_order}")
        frontier = new
    return FiniteIsometryGroup(elements, validate=False)


def _rotation2(angle):
    c, s = math.cos(angle), math.sin(angle)
    return np.array([[c, -s], [s, c]])


def trivial_group(n):
    return FiniteIsometryGroup([AffineIsometry.identity(n)], validate=False)


def cyclic_group(m):
    """Rotations of the plane by multiples of ``2 pi / m``."""
    return FiniteIsometryGroup(
        [AffineIsometry(_rotation2(2.0 * math.pi * j / m)) for j in range(m)]
    )


def dihedral_group(m):
    """Symmetries of the regular ``m``-gon: ``m`` rotations and ``m`` reflections."""
    flip = np.diag([1.0, -1.0])
    rots = [_rotation2(2.0 * math.pi * j / m) for j in range(m)]
    return FiniteIsometryGroup(
        [AffineIsometry(r) for r in rots] + [AffineIsometry(r @ flip) for r in rots]
    )


def _perm_matrix(perm):
    n = len(perm)
    p = np.zeros((n, n))
    p[list(perm), range(n)] = 1.0
    return p


def permutation_group(n):
    """All ``n!`` coordinate permutations of ``R^n``."""
    return FiniteIsometryGroup(
        [AffineIsometry(_perm_matrix(p)) for p in itertools.permutations(range(n))]
    )


def sign_flip_group(n):
    """All ``2^n`` coordinate sign changes of ``R^n``."""
    return FiniteIsometryGroup(
        [AffineIsometry(np.diag(s)) for s in itertools.product([1.0, -1.0], repeat=n)]
    )


def signed_permutation_group(n):
    """The hyperoctahedral group: signed permutation matrices, order ``2^n n!``."""
    elements = []
    for p in itertools.permutations(range(n)):
        pm = _perm_matrix(p)
        for s in itertools.product([1.0, -1.0], repeat=n):
            elements.append(AffineIsometry(np.diag(s) @ pm))
    return FiniteIsometryGroup(elements)


def block_permutation_group(n, k):
    """``S_k`` permuting the ``k`` blocks of ``(R^n)^k``, realized on ``R^{nk}``."""
    elements = []
    for p in itertools.permutations(range(k)):
        elements.append(AffineIsometry(np.kron(_perm_matrix(p), np.eye(n))))
    return FiniteIsometryGroup(elements, validate=False)


def block_l1_distance(n):
    """Sum over blocks of the Euclidean block distances on ``(R^n)^k``."""

    def dist(x, y):
        d = (np.asarray(x, dtype=float) - np.asarray(y, dtype=float)).reshape(-1, n)
        return float(np.sum(np.linalg.norm(d, axis=1)))

    return dist


@dataclass(frozen=True, eq=False)
class OrbitPoint:
    """The orbit ``[x] = G x`` of a representative point."""

    representative: np.ndarray
    group: FiniteIsometryGroup

    def __post_init__(self):
        x = np.array(self.representative, dtype=float).ravel()
        if x.size != self.group.n:
            raise ValueError(f"point has dimension {x.size}, group acts on R^{self.group.n}")
        x.setflags(write=False)
        object.__setattr__(self, "representative", x)


def _check_same_group(x, y):
    if x.group is not y.group:
        raise ValueError("orbit points belong to different groups")


def quotient_distance(x, y, metric=None):
    """``min_{g in G} d(x, g y)``.

    ``metric`` defaults to the Euclidean distance; any metric for which
    every group element is an isometry may be passed.
    """
    _check_same_group(x, y)
    gy = x.group.orbit(y.representative)
    if metric is None:
        return float(np.min(np.linalg.norm(gy - x.representative, axis=1)))
    return min(metric(x.representative, p) for p in gy)


def orbit_measure(x):
    """Empirical measure of size ``|G|`` on ``g_1 x, ..., g_k x`` (with multiplicity)."""
    return EmpiricalMeasure(x.group.orbit(x.representative))


def check_isometric_reduction(x, y):
    """Compare the quotient distance with ``W_1`` of the two orbit measures.

    Returns ``(lhs, rhs, ok)`` with ``ok`` iff ``|lhs - rhs| <= 1e-9 (1 + lhs)``.
    """
    _check_same_group(x, y)
    lhs = quotient_distance(x, y)
    rhs, _ = w1(orbit_measure(x), orbit_measure(y))
    return lhs, rhs, abs(lhs - rhs) <= 1e-9 * (1.0 + lhs)
