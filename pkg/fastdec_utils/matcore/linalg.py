"""
Complex matrix toolbox: vectorizations, the Hermitian inner product,
structural predicates and Kronecker products.

Matrices are plain `numpy` arrays of dtype complex128. Vectorization is
column-major (column 1, then column 2, ...) everywhere.
"""
import functools
import typing as tp

import numpy as np
import numpy.typing as npt

from fastdec_utils.exceptions import MatrixShapeError
from fastdec_utils.utils import default_invertibility_tolerance, default_tolerance

CMatrix = npt.NDArray[np.complex128]
RVector = npt.NDArray[np.float64]


def as_cmatrix(A, name: str = "matrix") -> CMatrix:
    """
    Converts `A` to a finite two dimensional complex128 array.

    Raises
    ------
    `MatrixShapeError`
        If `A` is not two dimensional, is empty or has NaN/Inf entries.
    """
    try:
        arr = np.asarray(A, dtype=np.complex128)
    except (TypeError, ValueError) as e:
        raise MatrixShapeError(f"Can't read {name} as a complex matrix", e) from e
    if arr.ndim != 2 or arr.size == 0:
        raise MatrixShapeError(
            f"Expected a non-empty two dimensional {name}, got shape {arr.shape}"
        )
    if not np.all(np.isfinite(arr)):
        raise MatrixShapeError(f"The {name} has non-finite entries")
    return arr


def is_square(A) -> bool:
    arr = np.asarray(A)
    return arr.ndim == 2 and arr.shape[0] == arr.shape[1]


def _square(A, name="matrix") -> CMatrix:
    arr = as_cmatrix(A, name)
    if not is_square(arr):
        raise MatrixShapeError(f"The {name} must be square, got shape {arr.shape}")
    return arr


def _same_square(A, B) -> tp.Tuple[CMatrix, CMatrix]:
    A = _square(A, "first matrix")
    B = _square(B, "second matrix")
    if A.shape != B.shape:
        raise MatrixShapeError(f"Size mismatch: {A.shape} and {B.shape}")
    return A, B


def dagger(A) -> CMatrix:
    """Conjugate transpose."""
    return np.conj(np.asarray(A, dtype=np.complex128)).T


def frobenius(A) -> float:
    return float(np.linalg.norm(A, ord="fro"))


def vec_c(A) -> npt.NDArray[np.complex128]:
    """
    Stacks the columns of the square matrix `A`.

    Example:
    --------
        >>> vec_c([[1, 1j], [0, 2]])
        array([1.+0.j, 0.+0.j, 0.+1.j, 2.+0.j])
    """
    A = _square(A)
    return A.flatten(order="F")


def vec_r(v) -> RVector:
    """
    Interleaves real and imaginary parts: (Re v1, Im v1, Re v2, ...).
    """
    v = np.asarray(v, dtype=np.complex128).ravel()
    out = np.empty(2 * v.size, dtype=np.float64)
    out[0::2] = v.real
    out[1::2] = v.imag
    return out


def vec_r_mat(A) -> RVector:
    return vec_r(vec_c(A))


def unvec_r_mat(x, n: int) -> CMatrix:
    """
    Inverse of `vec_r_mat` for an n x n matrix.
    """
    x = np.asarray(x, dtype=np.float64)
    if x.size != 2 * n * n:
        raise MatrixShapeError(f"Expected {2 * n * n} reals, got {x.size}")
    v = x[0::2] + 1j * x[1::2]
    return v.reshape((n, n), order="F")


def herm_inner(A, B) -> complex:
    """
    Tr(A B*), which equals <vec_c(A), vec_c(B)> over C.
    """
    A, B = _same_square(A, B)
    return complex(np.trace(A @ dagger(B)))


def real_dot_identity_check(A, B, tol: float = 1e-12) -> bool:
    """
    Checks vec_r_mat(A) . vec_r_mat(B) == Re Tr(A B*) within `tol`.
    """
    A, B = _same_square(A, B)
    lhs = float(np.dot(vec_r_mat(A), vec_r_mat(B)))
    rhs = herm_inner(A, B).real
    return abs(lhs - rhs) <= tol


def _structure_gap(residual, A, tol) -> bool:
    return frobenius(residual) <= tol * max(1.0, frobenius(A))


def is_hermitian(A, tol: float = None) -> bool:
    tol = default_tolerance() if tol is None else tol
    A = _square(A)
    return _structure_gap(dagger(A) - A, A, tol)


def is_skew_hermitian(A, tol: float = None) -> bool:
    tol = default_tolerance() if tol is None else tol
    A = _square(A)
    return _structure_gap(dagger(A) + A, A, tol)


def hermitian_parts(A) -> tp.Tuple[CMatrix, CMatrix]:
    """
    Splits `A` into its Hermitian and skew-Hermitian parts,
    A = (A + A*)/2 + (A - A*)/2.
    """
    A = _square(A)
    return (A + dagger(A)) / 2, (A - dagger(A)) / 2


def kronecker(A, B) -> CMatrix:
    return np.kron(as_cmatrix(A), as_cmatrix(B))


def kronecker_all(factors: tp.Sequence, identity_size: int = 1) -> CMatrix:
    """
    Kronecker product of all `factors` in order; the empty
    product is the identity of size `identity_size`.
    """
    if not factors:
        return np.eye(identity_size, dtype=np.complex128)
    return functools.reduce(kronecker, factors)


def anticommute(A, B, tol: float = None) -> bool:
    """
    True if ||AB + BA||_F <= tol * max(1, ||A||_F ||B||_F).
    """
    tol = default_tolerance() if tol is None else tol
    A, B = _same_square(A, B)
    scale = max(1.0, frobenius(A) * frobenius(B))
    return frobenius(A @ B + B @ A) <= tol * scale


def is_invertible(A, tol: float = None) -> bool:
    """
    True if the smallest singular value of `A` exceeds tol * ||A||_F.
    """
    tol = default_invertibility_tolerance() if tol is None else tol
    A = _square(A)
    norm = frobenius(A)
    if norm == 0.0:
        return False
    smallest = np.linalg.svd(A, compute_uv=False)[-1]
    return bool(smallest > tol * norm)


def real_matrix(family: tp.Sequence) -> npt.NDArray[np.float64]:
    """
    The 2n^2 x m real matrix whose columns are vec_r_mat of the family.
    """
    if not family:
        raise MatrixShapeError("Empty matrix family")
    return np.column_stack([vec_r_mat(A) for A in family])


def real_rank(family: tp.Sequence, tol: float = None) -> int:
    """
    Dimension of the real span of the family.
    """
    tol = default_tolerance() if tol is None else tol
    M = real_matrix(family)
    singular = np.linalg.svd(M, compute_uv=False)
    if singular.size == 0 or singular[0] == 0.0:
        return 0
    return int(np.sum(singular > tol * singular[0]))


def is_real_independent(family: tp.Sequence, tol: float = None) -> bool:
    return real_rank(family, tol) == len(family)
