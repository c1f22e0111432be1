"""Moment sequences, moment matrices, atomic measures, and the shared
numerical predicates (positive semidefiniteness, rank, Hankel structure).

Conventions used throughout the package:

* A bivariate moment is indexed by the exponent pair ``(i, j)`` of x^i y^j.
* Monomials of degree <= n are ordered graded-lexicographically:
  1, X, Y, X^2, XY, Y^2, X^3, X^2 Y, X Y^2, Y^3, ...
* The moment matrix of order n has entry ``beta[row + col]`` at position
  (row, col), which forces the generalized-Hankel structure.
"""

from dataclasses import dataclass

import numpy as np

from .errors import InputError

Index = tuple[int, int]

#: Default tolerances; every operation that needs one accepts an override.
RANK_TOL = 1e-9
WEIGHT_TOL = 1e-10
MOMENT_TOL = 1e-8


def monomials(max_degree: int) -> tuple[Index, ...]:
    """Exponent pairs of total degree <= max_degree in canonical order."""
    out = []
    for d in range(max_degree + 1):
        for j in range(d + 1):
            out.append((d - j, j))
    return tuple(out)


def matrix_size(n: int) -> int:
    """Number of bivariate monomials of degree <= n."""
    return (n + 1) * (n + 2) // 2


@dataclass(frozen=True)
class MomentSequence:
    """All moments beta_{ij} for i+j <= degree.

    ``values`` must contain every index with i+j <= degree (15 entries for
    degree 4, 28 for degree 6).  The sequence is treated as immutable.
    """

    degree: int
    values: dict[Index, float]

    def __post_init__(self):
        if self.degree < 0:
            raise InputError(f"degree must be nonnegative, got {self.degree}")
        missing = [m for m in monomials(self.degree) if m not in self.values]
        if missing:
            raise InputError(f"moment sequence is missing indices {missing}")

    def __getitem__(self, index: Index) -> float:
        try:
            return self.values[index]
        except KeyError:
            raise InputError(f"moment index {index} not present") from None

    @property
    def mass(self) -> float:
        return self.values[(0, 0)]

    def scaled(self, factor: float) -> "MomentSequence":
        """Return the sequence with every moment multiplied by factor."""
        return MomentSequence(self.degree, {k: factor * v for k, v in self.values.items()})

    def norm_inf(self) -> float:
        return max(abs(v) for v in self.values.values())


@dataclass(frozen=True)
class MomentMatrix:
    """Symmetric matrix indexed by monomials of degree <= order."""

    order: int
    entries: np.ndarray
    labels: tuple[Index, ...]

    def __post_init__(self):
        m = matrix_size(self.order)
        if self.entries.shape != (m, m):
            raise InputError(f"moment matrix of order {self.order} must be {m}x{m}")
        self.entries.setflags(write=False)

    def norm_inf(self) -> float:
        return float(np.linalg.norm(self.entries, np.inf))


@dataclass(frozen=True)
class AtomicMeasure:
    """Finitely many weighted points ``(x, y, w)`` in the plane.

    Solver outputs always carry strictly positive weights summing to the
    represented beta_00; the container itself does not enforce that so that
    defective candidates can still be passed to :func:`verify_measure`.
    """

    atoms: tuple[tuple[float, float, float], ...]

    @property
    def mass(self) -> float:
        return sum(w for _, _, w in self.atoms)

    def min_weight(self) -> float:
        return min((w for _, _, w in self.atoms), default=0.0)

    def __len__(self) -> int:
        return len(self.atoms)


@dataclass(frozen=True)
class VerificationReport:
    """Residuals of a candidate measure against a target degree-4 sequence."""

    max_abs_residual: float
    max_rel_residual: float
    psd_margin: float
    atom_count: int
    branch: str
    ok: bool


def moment_matrix(beta: MomentSequence, n: int) -> MomentMatrix:
    """Assemble the order-n moment matrix of ``beta``.

    Requires beta.degree >= 2n; entry (u, v) is beta at the sum of the row
    and column exponents, so the result is symmetric and generalized-Hankel
    by construction.
    """
    if beta.degree < 2 * n:
        raise InputError(f"order-{n} matrix needs degree >= {2 * n}, sequence has {beta.degree}")
    labels = monomials(n)
    m = len(labels)
    entries = np.empty((m, m))
    for r, (ir, jr) in enumerate(labels):
        for c, (ic, jc) in enumerate(labels):
            entries[r, c] = beta[(ir + ic, jr + jc)]
    return MomentMatrix(n, entries, labels)


def riesz(beta: MomentSequence, poly: dict[Index, float]) -> float:
    """Apply the Riesz functional: sum of p_{ij} * beta_{ij}."""
    for (i, j) in poly:
        if i + j > beta.degree:
            raise InputError(f"polynomial degree {i + j} exceeds sequence degree {beta.degree}")
    return float(sum(c * beta[idx] for idx, c in poly.items()))


def moments_of_measure(mu: AtomicMeasure, degree: int) -> MomentSequence:
    """Exact moments of an atomic measure up to the given total degree."""
    if degree < 0:
        raise InputError("degree must be nonnegative")
    values: dict[Index, float] = {}
    for (i, j) in monomials(degree):
        values[(i, j)] = float(sum(w * x**i * y**j for x, y, w in mu.atoms))
    return MomentSequence(degree, values)


def psd_rank(mat: MomentMatrix, rank_tol: float = RANK_TOL) -> tuple[bool, int, float]:
    """Eigenvalue-based PSD test and numerical rank.

    Rank counts eigenvalues above rank_tol * max(1, ||M||_inf); the matrix
    is reported PSD when the smallest eigenvalue clears the negated
    threshold.
    """
    eigvals = np.linalg.eigvalsh(mat.entries)
    scale = max(1.0, mat.norm_inf())
    thresh = rank_tol * scale
    rank = int(np.sum(eigvals > thresh))
    min_eig = float(eigvals[0])
    return (min_eig >= -thresh), rank, min_eig


def is_positive_definite(mat: MomentMatrix, rank_tol: float = RANK_TOL) -> bool:
    ok, rank, _ = psd_rank(mat, rank_tol)
    return ok and rank == matrix_size(mat.order)


def verify_measure(
    beta: MomentSequence,
    mu: AtomicMeasure,
    tol: float = MOMENT_TOL,
    branch: str = "",
) -> VerificationReport:
    """Recompute all degree-4 moments of ``mu`` and compare against ``beta``.

    The relative residual is the max absolute moment error divided by
    max(1, ||beta||_inf).  Success requires the relative residual within
    tol and strictly positive weights.
    """
    if beta.degree != 4:
        raise InputError("verification targets degree-4 sequences")
    recomputed = moments_of_measure(mu, 4)
    diffs = [abs(beta[m] - recomputed[m]) for m in monomials(4)]
    max_abs = max(diffs)
    scale = max(1.0, beta.norm_inf())
    max_rel = max_abs / scale
    _, _, min_eig = psd_rank(moment_matrix(recomputed, 2))
    ok = max_rel <= tol and mu.min_weight() > 0.0
    return VerificationReport(
        max_abs_residual=max_abs,
        max_rel_residual=max_rel,
        psd_margin=min_eig,
        atom_count=len(mu),
        branch=branch,
        ok=ok,
    )
