"""Degree-one transformations of the plane and their action on moments.

An invertible affine map Psi(x, y) = (a + b x + c y, d + e x + f y) acts on
a moment sequence through the Riesz functional, inducing the congruence
M~ = J^T M J on moment matrices.  This module also provides the explicit
normalization that turns any positive definite order-2 matrix into one
whose order-1 block is the identity.
"""

from dataclasses import dataclass

import numpy as np

from .core import Index, MomentSequence, RANK_TOL, monomials, riesz
from .errors import InputError, NotPositiveDefiniteError
from .poly import Poly, affine_powers
from . import core

#: Linear parts with |bf - ce| below this (relative) are rejected as singular.
SINGULAR_TOL = 1e-13


@dataclass(frozen=True)
class DegreeOneTransform:
    """Affine map (x, y) -> (a + b x + c y, d + e x + f y) with bf - ce != 0."""

    a: float
    b: float
    c: float
    d: float
    e: float
    f: float

    def __post_init__(self):
        scale = max(1.0, abs(self.b), abs(self.c), abs(self.e), abs(self.f))
        if abs(self.det) <= SINGULAR_TOL * scale * scale:
            raise InputError(f"transform has singular linear part (bf - ce = {self.det})")

    @property
    def det(self) -> float:
        return self.b * self.f - self.c * self.e

    def point(self, x: float, y: float) -> tuple[float, float]:
        return (self.a + self.b * x + self.c * y, self.d + self.e * x + self.f * y)

    def components(self) -> tuple[Poly, Poly]:
        """Coefficient dictionaries of the two coordinate polynomials."""
        p1 = {(0, 0): self.a, (1, 0): self.b, (0, 1): self.c}
        p2 = {(0, 0): self.d, (1, 0): self.e, (0, 1): self.f}
        return p1, p2


@dataclass(frozen=True)
class TransformChain:
    """Transforms in the order they were applied to the moment problem."""

    transforms: tuple[DegreeOneTransform, ...] = ()

    def extended(self, psi: DegreeOneTransform) -> "TransformChain":
        return TransformChain(self.transforms + (psi,))

    def push_point(self, x: float, y: float) -> tuple[float, float]:
        for psi in self.transforms:
            x, y = psi.point(x, y)
        return (x, y)

    def __len__(self) -> int:
        return len(self.transforms)


def identity_transform() -> DegreeOneTransform:
    return DegreeOneTransform(0.0, 1.0, 0.0, 0.0, 0.0, 1.0)


def from_parts(linear: np.ndarray, offset=(0.0, 0.0)) -> DegreeOneTransform:
    return DegreeOneTransform(
        float(offset[0]), float(linear[0, 0]), float(linear[0, 1]),
        float(offset[1]), float(linear[1, 0]), float(linear[1, 1]),
    )


def compose(psi2: DegreeOneTransform, psi1: DegreeOneTransform) -> DegreeOneTransform:
    """The map applying psi1 first, then psi2."""
    l1 = np.array([[psi1.b, psi1.c], [psi1.e, psi1.f]])
    l2 = np.array([[psi2.b, psi2.c], [psi2.e, psi2.f]])
    off = np.array(psi2.point(psi1.a, psi1.d))
    return from_parts(l2 @ l1, off)


def invert(psi: DegreeOneTransform) -> DegreeOneTransform:
    lin = np.array([[psi.b, psi.c], [psi.e, psi.f]])
    inv = np.linalg.inv(lin)
    off = -inv @ np.array([psi.a, psi.d])
    return from_parts(inv, off)


def transform_moments(beta: MomentSequence, psi: DegreeOneTransform) -> MomentSequence:
    """New sequence with beta~_{ij} = L_beta(Psi_1^i Psi_2^j).

    This is the moment sequence of the pushforward of any representing
    measure under psi; expansion is exact coefficient convolution.
    """
    p1, p2 = psi.components()
    table = affine_powers(p1, p2, beta.degree)
    values: dict[Index, float] = {}
    for m in monomials(beta.degree):
        values[m] = riesz(beta, table[m])
    return MomentSequence(beta.degree, values)


def j_matrix(psi: DegreeOneTransform, n: int) -> np.ndarray:
    """Matrix of p-hat -> (p o Psi)-hat on coefficient vectors of degree <= n.

    Column for monomial x^i y^j holds the expanded coefficients of
    Psi_1^i Psi_2^j; the congruence M~(n) = J^T M(n) J then reproduces
    transform_moments at the matrix level.
    """
    if n not in (1, 2, 3):
        raise InputError(f"order must be 1, 2 or 3, got {n}")
    p1, p2 = psi.components()
    table = affine_powers(p1, p2, n)
    labels = monomials(n)
    pos = {m: k for k, m in enumerate(labels)}
    J = np.zeros((len(labels), len(labels)))
    for col, m in enumerate(labels):
        for idx, coeff in table[m].items():
            J[pos[idx], col] = coeff
    return J


def normalize(beta: MomentSequence, rank_tol: float = RANK_TOL) -> tuple[MomentSequence, DegreeOneTransform]:
    """Transform a mass-one sequence so its order-1 moment matrix is the identity.

    Uses the closed-form coefficients built from the leading principal
    minors d2 = beta20 - beta10^2 and d3 = det of the order-1 matrix; both
    must be positive, which is guaranteed when M(2) is positive definite.
    """
    b00 = beta[(0, 0)]
    if abs(b00 - 1.0) > 1e-12:
        raise InputError("normalize expects a sequence scaled to mass one")
    b10, b01 = beta[(1, 0)], beta[(0, 1)]
    b20, b11, b02 = beta[(2, 0)], beta[(1, 1)], beta[(0, 2)]
    d2 = b20 - b10 * b10
    d3 = (-b02 * b10 * b10 + 2.0 * b01 * b10 * b11 - b11 * b11
          - b01 * b01 * b20 + b02 * b20)
    scale = max(1.0, abs(b20), abs(b02), abs(b11))
    if d2 <= rank_tol * scale or d3 <= rank_tol * scale * scale:
        raise NotPositiveDefiniteError(
            f"order-1 minors not positive (d2 = {d2}, d3 = {d3})")
    sd2 = np.sqrt(d2)
    sd23 = np.sqrt(d2 * d3)
    psi = DegreeOneTransform(
        a=(b01 * b20 - b10 * b11) / sd23,
        b=(b11 - b01 * b10) / sd23,
        c=-np.sqrt(d2 / d3),
        d=-b10 / sd2,
        e=1.0 / sd2,
        f=0.0,
    )
    transformed = transform_moments(beta, psi)
    low = [transformed[m] for m in ((0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2))]
    target = np.array([1.0, 0.0, 0.0, 1.0, 0.0, 1.0])
    if np.max(np.abs(np.array(low) - target)) > 1e-8:
        raise NotPositiveDefiniteError(
            f"normalization failed to reach the identity block: {low}")
    return transformed, psi


def pullback_measure(mu: core.AtomicMeasure, chain: TransformChain) -> core.AtomicMeasure:
    """Map atoms through the chain inverses in reverse order; weights kept."""
    inverses = [invert(psi) for psi in reversed(chain.transforms)]
    atoms = []
    for x, y, w in mu.atoms:
        for inv in inverses:
            x, y = inv.point(x, y)
        atoms.append((x, y, w))
    return core.AtomicMeasure(tuple(atoms))
