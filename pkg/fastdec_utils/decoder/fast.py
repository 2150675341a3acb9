"""
Conditioned decoding over a group partition.

With T permuted to Gamma_1, ..., Gamma_g, Gamma_{g+1} the factor R has
no entries between distinct groups, so once the remainder symbols u are
fixed the metric splits into one independent term per group plus the
remainder rows' term.
"""
import logging
import typing as tp

import numpy as np

from fastdec_utils.codes import CodeBasis, Constellation
from fastdec_utils.decoder.ml import candidate_grid, check_channel, projected_metrics
from fastdec_utils.decoder.models import DecodeResult
from fastdec_utils.lattice import build_T, ordered_qr, permute_T
from fastdec_utils.matcore import vec_r_mat
from fastdec_utils.mograph import ConflictGraph, GroupPartition, conflict_graph

logger = logging.getLogger(__name__)


def _lexicographic_first(rows: np.ndarray) -> int:
    """Index of the lexicographically smallest row."""
    order = np.lexsort(rows.T[::-1])
    return int(order[0])


def fast_decode(
    Y,
    H,
    basis: CodeBasis,
    partition: GroupPartition,
    constellation: Constellation,
    graph: ConflictGraph = None,
    tol: float = None,
) -> DecodeResult:
    """
    Decodes the g groups in parallel for every assignment of the
    remainder symbols and keeps the best total.

    Parameters
    ----------
    `graph`: ConflictGraph
        Conflict graph of `basis`; computed when not given.

    Raises
    ------
    `PartitionError`
        If two groups hold a conflicting pair; the decoder refuses
        instead of returning a wrong minimizer.
    """
    Y, H = check_channel(Y, H, basis)
    graph = conflict_graph(basis, tol) if graph is None else graph
    partition.validate_against(graph)

    qr = ordered_qr(permute_T(build_T(basis, H), partition))
    y = qr.project(vec_r_mat(Y))
    R = qr.R
    values = constellation.as_array()
    q = values.size
    v = partition.v
    m = partition.remainder_size
    rem = slice(v - m, v)

    conditioned = candidate_grid(values, m)
    remainder_target = y[rem][None, :] - conditioned @ R[rem, rem].T
    totals = np.einsum("ij,ij->i", remainder_target, remainder_target)
    choices = []
    start = 0
    for size in partition.sizes:
        rows = slice(start, start + size)
        candidates = candidate_grid(values, size)
        # targets[u] = y_i - N_i u
        targets = y[rows][None, :] - conditioned @ R[rows, rem].T
        predicted = candidates @ R[rows, rows].T
        diff = targets[:, None, :] - predicted[None, :, :]
        metrics = np.einsum("ijk,ijk->ij", diff, diff)
        best = np.argmin(metrics, axis=1)
        totals = totals + metrics[np.arange(metrics.shape[0]), best]
        choices.append(candidates[best])
        start += size

    permuted = np.hstack(choices + [conditioned]) if choices else conditioned
    symbols = np.empty_like(permuted)
    symbols[:, list(partition.permutation)] = permuted
    best_total = totals.min()
    tied = np.flatnonzero(totals == best_total)
    winner = tied[_lexicographic_first(symbols[tied])] if tied.size > 1 else int(tied[0])

    evals = partition.fast_evaluations(q)
    logger.debug("Fast decode: metric %.6g with %d evaluations", best_total, evals)
    return DecodeResult(symbols=symbols[winner].copy(), metric=max(float(best_total), 0.0), metric_evals=evals)


def metric_decomposition_gap(Y, H, basis: CodeBasis, s) -> float:
    """
    | ||vec_r(Y) - T s||^2 - (||Q^t y - R s||^2 + ||y||^2 - ||Q^t y||^2) |,
    zero up to rounding.
    """
    qr = ordered_qr(build_T(basis, H))
    y = vec_r_mat(Y)
    s = np.asarray(s, dtype=np.float64)
    full = float(np.sum((y - qr.Q @ (qr.R @ s)) ** 2))
    projected = qr.project(y)
    split = float(projected_metrics(projected, qr.R, s[None, :])[0])
    constant = float(y @ y - projected @ projected)
    return abs(full - (split + constant))
