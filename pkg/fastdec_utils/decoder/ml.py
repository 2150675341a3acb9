"""
Exhaustive maximum-likelihood decoding.

Both decoders minimize ||Q^t vec_r(Y) - R s||^2, which differs from
||Y - H X(s)||_F^2 only by the energy of vec_r(Y) outside the column
space of T, a constant for a given Y.
"""
import logging
import typing as tp

import numpy as np

from fastdec_utils.codes import CodeBasis, Constellation, assemble
from fastdec_utils.decoder.models import DecodeResult
from fastdec_utils.exceptions import LatticeRankError, MatrixShapeError, SearchLimitError
from fastdec_utils.lattice import QRFactors, build_T, ordered_qr
from fastdec_utils.matcore import as_cmatrix, frobenius, is_invertible, vec_r_mat
from fastdec_utils.utils import get_env_params

logger = logging.getLogger(__name__)

CHUNK_SIZE = 1 << 16


def check_channel(Y, H, basis: CodeBasis) -> tp.Tuple[np.ndarray, np.ndarray]:
    """
    Raises
    ------
    `MatrixShapeError`
        If Y or H is not n x n.
    `LatticeRankError`
        If H is near singular.
    """
    Y = as_cmatrix(Y, "received matrix")
    H = as_cmatrix(H, "channel matrix")
    for name, M in (("received matrix", Y), ("channel matrix", H)):
        if M.shape != (basis.n, basis.n):
            raise MatrixShapeError(f"The {name} is {M.shape}, the code needs ({basis.n}, {basis.n})")
    if not is_invertible(H):
        raise LatticeRankError("The channel matrix is near singular; decoding needs an invertible H")
    return Y, H


def candidate_grid(values: np.ndarray, length: int, start: int = 0, stop: int = None) -> np.ndarray:
    """
    Rows start..stop-1 of the lexicographic enumeration of values^length.
    """
    q = values.size
    stop = q ** length if stop is None else stop
    if length == 0:
        return np.zeros((stop - start, 0))
    digits = np.unravel_index(np.arange(start, stop), (q,) * length)
    return values[np.stack(digits, axis=1)]


def search_size(constellation: Constellation, basis: CodeBasis, cap: int = None) -> int:
    """
    |S|^(2l), checked against the brute force cap.

    Raises
    ------
    `SearchLimitError`
        If the search is larger than the cap.
    """
    cap = get_env_params()["brute_force_cap"] if cap is None else cap
    size = constellation.size ** basis.size
    if size > cap:
        raise SearchLimitError(
            f"Exhaustive search over |S|^2l = {constellation.size}^{basis.size} = {size} "
            f"candidates exceeds the cap {cap}; use a smaller constellation, the fast "
            "decoder alone, or raise FASTDEC_BRUTE_FORCE_CAP",
            size=size,
            cap=cap,
        )
    return size


def projected_metrics(y: np.ndarray, R: np.ndarray, candidates: np.ndarray) -> np.ndarray:
    residual = y[None, :] - candidates @ R.T
    return np.einsum("ij,ij->i", residual, residual)


def ml_brute(
    Y,
    H,
    basis: CodeBasis,
    constellation: Constellation,
    cap: int = None,
    qr: QRFactors = None,
) -> DecodeResult:
    """
    Minimum of the metric over all of S^(2l), enumerated in
    lexicographic order so the first minimum is the lexicographically
    smallest minimizer.

    Parameters
    ----------
    `qr`: QRFactors
        Factors of T(H) in basis order, when already computed.
    """
    Y, H = check_channel(Y, H, basis)
    size = search_size(constellation, basis, cap)
    qr = ordered_qr(build_T(basis, H)) if qr is None else qr
    y = qr.project(vec_r_mat(Y))
    values = constellation.as_array()
    best_metric, best_symbols = np.inf, None
    for start in range(0, size, CHUNK_SIZE):
        candidates = candidate_grid(values, basis.size, start, min(start + CHUNK_SIZE, size))
        metrics = projected_metrics(y, qr.R, candidates)
        index = int(np.argmin(metrics))
        if metrics[index] < best_metric:
            best_metric, best_symbols = float(metrics[index]), candidates[index]
    return DecodeResult(symbols=best_symbols.copy(), metric=max(best_metric, 0.0), metric_evals=size)


def frobenius_metric(Y, H, basis: CodeBasis, s) -> float:
    """||Y - H X(s)||_F^2"""
    Y = as_cmatrix(Y, "received matrix")
    H = as_cmatrix(H, "channel matrix")
    return frobenius(Y - H @ assemble(basis, s)) ** 2
