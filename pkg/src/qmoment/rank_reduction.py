"""Rank-one reduction of an invertible 6x6 moment matrix.

Subtracting u0 * E11 (the moment matrix of the unit point mass at the
origin, scaled) from a positive definite order-2 matrix drops its rank to
exactly 5 while keeping it positive semidefinite; u0 is the ratio of the
full determinant to the determinant of the compression to the last five
rows and columns.
"""

from dataclasses import dataclass

import numpy as np

from .core import MomentMatrix, RANK_TOL, psd_rank
from .errors import NotPositiveDefiniteError, NumericalFailureError


@dataclass(frozen=True)
class RankReduction:
    u0: float
    reduced: MomentMatrix
    residual_rank: int
    first_entry: float


def u0(mat: MomentMatrix, rank_tol: float = RANK_TOL) -> float:
    """The unique u for which mat - u * E11 becomes singular.

    Computed in cofactor form det M / det M_{2..6} (pivoted LU underneath),
    which avoids forming the inverse; requires a positive definite input.
    """
    ok, rank, _ = psd_rank(mat, rank_tol)
    m = mat.entries.shape[0]
    if not ok or rank < m:
        raise NotPositiveDefiniteError("rank-one reduction needs a positive definite matrix")
    det_full = float(np.linalg.det(mat.entries))
    det_minor = float(np.linalg.det(mat.entries[1:, 1:]))
    value = det_full / det_minor
    if value <= 0.0:
        raise NotPositiveDefiniteError(f"determinant ratio {value} not positive")
    return value


def reduce(mat: MomentMatrix, rank_tol: float = RANK_TOL) -> RankReduction:
    """Split ``mat`` into a rank-5 PSD moment matrix plus u0 * E11.

    Asserts the reduced matrix is PSD of rank exactly 5 and that its first
    three columns stay linearly independent (the positivity of the leading
    3x3 block).  The rank check retries once with rank_tol relaxed by a
    decade before reporting failure.
    """
    value = u0(mat, rank_tol)
    entries = mat.entries.copy()
    entries[0, 0] -= value
    reduced = MomentMatrix(mat.order, entries, mat.labels)

    first_entry = float(entries[0, 0])
    if first_entry <= 0.0:
        raise NumericalFailureError(f"reduced (1,1) entry {first_entry} not positive")

    is_psd, rank, min_eig = psd_rank(reduced, rank_tol)
    if rank != 5:
        is_psd, rank, min_eig = psd_rank(reduced, 10.0 * rank_tol)
    if rank != 5 or not is_psd:
        raise NumericalFailureError(
            f"reduction produced rank {rank} (min eigenvalue {min_eig}), expected rank 5 PSD")

    head = np.linalg.eigvalsh(entries[:3, :3])
    if head[0] <= rank_tol * max(1.0, reduced.norm_inf()):
        raise NumericalFailureError("columns 1, X, Y of the reduced matrix are dependent")

    return RankReduction(u0=value, reduced=reduced, residual_rank=rank, first_entry=first_entry)
