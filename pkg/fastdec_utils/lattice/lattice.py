"""
The real lattice generator matrix T(H) of a code over a channel.
"""
from __future__ import annotations

import typing as tp
from dataclasses import dataclass

import numpy as np

from fastdec_utils.codes import CodeBasis
from fastdec_utils.exceptions import MatrixShapeError, PartitionError
from fastdec_utils.matcore import as_cmatrix, vec_r_mat
from fastdec_utils.mograph import GroupPartition


@dataclass(frozen=True, eq=False)
class LatticeMatrix:
    """
    Real 2n^2 x 2l matrix whose j-th column is vec_r(H A_order[j]).
    `order` holds the 0-based basis position of every column.
    """

    T: np.ndarray
    order: tp.Tuple[int, ...]

    def __post_init__(self):
        T = np.array(self.T, dtype=np.float64)
        if T.ndim != 2:
            raise MatrixShapeError(f"Lattice matrix must be two dimensional, got {T.shape}")
        order = tuple(int(u) for u in self.order)
        if sorted(order) != list(range(T.shape[1])):
            raise MatrixShapeError(f"Column order {order} is not a permutation of {T.shape[1]} columns")
        T.setflags(write=False)
        object.__setattr__(self, "T", T)
        object.__setattr__(self, "order", order)

    @property
    def shape(self) -> tp.Tuple[int, int]:
        return self.T.shape

    @property
    def columns(self) -> int:
        return self.T.shape[1]

    @property
    def is_identity_order(self) -> bool:
        return self.order == tuple(range(self.columns))

    def column(self, position: int) -> np.ndarray:
        """Column of the basis position `position`, whatever the current order."""
        return self.T[:, self.order.index(position)]


def build_T(basis: CodeBasis, H) -> LatticeMatrix:
    """
    T(H) with columns vec_r(H A_i) in basis order.

    Raises
    ------
    `MatrixShapeError`
        If `H` is not n x n.
    """
    H = as_cmatrix(H, "channel matrix")
    if H.shape != (basis.n, basis.n):
        raise MatrixShapeError(f"Channel is {H.shape}, the code needs ({basis.n}, {basis.n})")
    T = np.column_stack([vec_r_mat(H @ A) for A in basis.matrices])
    return LatticeMatrix(T, tuple(range(basis.size)))


def permute_T(lattice: LatticeMatrix, partition: GroupPartition) -> LatticeMatrix:
    """
    Reorders the columns as Gamma_1, ..., Gamma_g, Gamma_{g+1}.

    Raises
    ------
    `PartitionError`
        If the partition doesn't cover exactly the lattice columns.
    """
    if not partition.covers(lattice.columns):
        raise PartitionError(
            f"Partition covers {partition.v} positions, the lattice has {lattice.columns} columns"
        )
    position = {u: j for j, u in enumerate(lattice.order)}
    pi = partition.permutation
    return LatticeMatrix(lattice.T[:, [position[u] for u in pi]], pi)
