"""
Modified Gram-Schmidt QR in strict column order and the zero-block
pattern of R.

With columns ordered Gamma_1, ..., Gamma_g, Gamma_{g+1}, R is block
upper triangular: diagonal blocks B_i for the groups, zeros between
distinct groups, and arbitrary entries only in the trailing n_{g+1}
remainder columns.
"""
from __future__ import annotations

import logging
import typing as tp
from dataclasses import dataclass

import numpy as np

from fastdec_utils.constants import Tolerances
from fastdec_utils.exceptions import LatticeRankError, VerificationError
from fastdec_utils.lattice.lattice import LatticeMatrix
from fastdec_utils.mograph import GroupPartition

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class QRFactors:
    """
    Thin factors of T: Q with orthonormal columns and R upper
    triangular with nonnegative diagonal. `order` is the column
    order of the factored lattice matrix.
    """

    Q: np.ndarray
    R: np.ndarray
    order: tp.Tuple[int, ...]

    def project(self, y) -> np.ndarray:
        """Q^t y"""
        return self.Q.T @ np.asarray(y, dtype=np.float64)


def _as_array(T) -> tp.Tuple[np.ndarray, tp.Tuple[int, ...]]:
    if isinstance(T, LatticeMatrix):
        return np.array(T.T, dtype=np.float64), T.order
    arr = np.array(T, dtype=np.float64)
    return arr, tuple(range(arr.shape[1]))


def ordered_qr(T) -> QRFactors:
    """
    Modified Gram-Schmidt on the columns of T, first to last.

    Parameters
    ----------
    `T`: LatticeMatrix or array
        Real matrix with at least as many rows as columns.

    Raises
    ------
    `LatticeRankError`
        If a column's remaining norm falls below 1e-10 ||T||_F.
    `VerificationError`
        If Q^t Q or QR misses I or T by more than 1e-9.
    """
    A, order = _as_array(T)
    n_rows, n_cols = A.shape
    if n_rows < n_cols:
        raise LatticeRankError(f"T has {n_cols} columns but only {n_rows} rows")
    norm_T = float(np.linalg.norm(A))
    Q = A.copy()
    R = np.zeros((n_cols, n_cols))
    for j in range(n_cols):
        r_jj = float(np.linalg.norm(Q[:, j]))
        if r_jj <= Tolerances.RANK_COLLAPSE * norm_T or r_jj == 0.0:
            raise LatticeRankError(
                f"Column {j + 1} collapsed during Gram-Schmidt (norm {r_jj:.3e}); T is rank deficient"
            )
        Q[:, j] /= r_jj
        R[j, j] = r_jj
        for k in range(j + 1, n_cols):
            r_jk = float(np.dot(Q[:, j], Q[:, k]))
            R[j, k] = r_jk
            Q[:, k] -= r_jk * Q[:, j]
    reconstruction = float(np.linalg.norm(Q @ R - A))
    if reconstruction > Tolerances.QR_RECONSTRUCTION * norm_T:
        raise VerificationError(f"QR reconstruction error {reconstruction:.3e} is too large")
    orthogonality = float(np.max(np.abs(Q.T @ Q - np.eye(n_cols))))
    if orthogonality > Tolerances.QR_RECONSTRUCTION:
        raise VerificationError(f"Q lost orthogonality ({orthogonality:.3e})")
    return QRFactors(Q, R, order)


def allowed_pattern(partition: GroupPartition) -> np.ndarray:
    """
    Boolean mask of the entries of R that may be nonzero.
    """
    v = partition.v
    mask = np.zeros((v, v), dtype=bool)
    start = 0
    for size in partition.sizes:
        mask[start:start + size, start:start + size] = True
        start += size
    if partition.remainder_size:
        mask[:, v - partition.remainder_size:] = True
    return mask & np.triu(np.ones((v, v), dtype=bool))


def off_block_magnitude(R, partition: GroupPartition) -> float:
    """
    Largest |R_ij| outside the allowed block pattern.
    """
    R = np.asarray(R, dtype=np.float64)
    if R.shape != (partition.v, partition.v):
        raise VerificationError(f"R is {R.shape}, the partition has {partition.v} positions")
    outside = np.abs(R[~allowed_pattern(partition)])
    return float(outside.max()) if outside.size else 0.0


def verify_block_structure(R, partition: GroupPartition, tol: float = Tolerances.COLUMN_ORTHOGONAL) -> bool:
    """
    True if every entry of R outside the blocks is at most tol * ||R||_F.
    """
    magnitude = off_block_magnitude(R, partition)
    bound = tol * float(np.linalg.norm(R))
    logger.debug("Off-block magnitude %.3e against %.3e", magnitude, bound)
    return magnitude <= bound
