"""
Channel-independent column orthogonality.

Columns i and j of T(H) are orthogonal for every H exactly when A_i and
A_j are mutually orthogonal. For a pair that is not, the witness search
tries random channels and then the structured rank-one channels
E_kk, E_kk + E_kl and E_kk - i E_kl, which together read off every
entry of the Hermitian part of A_i A_j*.
"""
import itertools
import logging
import typing as tp
from dataclasses import dataclass

import numpy as np
import pandas as pd

from fastdec_utils.codes import CodeBasis
from fastdec_utils.constants import Tolerances
from fastdec_utils.exceptions import VerificationError
from fastdec_utils.lattice.channel import Channel, sample_channel
from fastdec_utils.matcore import frobenius, vec_r_mat
from fastdec_utils.mograph import mutually_orthogonal

logger = logging.getLogger(__name__)


def _unit(n: int, k: int, l: int) -> np.ndarray:
    E = np.zeros((n, n), dtype=np.complex128)
    E[k, l] = 1.0
    return E


def structured_channels(n: int) -> tp.List[Channel]:
    """
    The channels E_kk for every k, then E_kk + E_kl and
    E_kk - i E_kl for every ordered pair k != l.
    """
    channels = [Channel(_unit(n, k, k), label=f"E[{k + 1},{k + 1}]") for k in range(n)]
    for k, l in itertools.permutations(range(n), 2):
        channels.append(
            Channel(_unit(n, k, k) + _unit(n, k, l), label=f"E[{k + 1},{k + 1}]+E[{k + 1},{l + 1}]")
        )
        channels.append(
            Channel(_unit(n, k, k) - 1j * _unit(n, k, l), label=f"E[{k + 1},{k + 1}]-iE[{k + 1},{l + 1}]")
        )
    return channels


def column_dot_ratio(A, B, H) -> float:
    """
    |vec_r(HA) . vec_r(HB)| / (||HA||_F ||HB||_F), 0 when either
    column vanishes.
    """
    HA, HB = H @ A, H @ B
    norms = frobenius(HA) * frobenius(HB)
    if norms == 0.0:
        return 0.0
    return abs(float(np.dot(vec_r_mat(HA), vec_r_mat(HB)))) / norms


@dataclass(frozen=True)
class OrthogonalityOutcome:
    """
    `always_orthogonal` is set for mutually orthogonal pairs; otherwise
    `witness` is a channel whose columns are clearly not orthogonal.
    """

    i: int
    j: int
    always_orthogonal: bool
    witness: tp.Optional[Channel] = None
    max_ratio: float = 0.0


def column_orthogonality_test(
    basis: CodeBasis,
    i: int,
    j: int,
    num_channels: int,
    seed: int,
    tol: float = None,
) -> OrthogonalityOutcome:
    """
    Checks the channel-independent orthogonality of columns `i` and `j`
    (0-based).

    Raises
    ------
    `ValueError`
        If i == j.
    `VerificationError`
        If a mutually orthogonal pair has a non-orthogonal sampled column
        pair, or a non mutually orthogonal pair has no witness among the
        sampled and structured channels.
    """
    if i == j:
        raise ValueError("Column orthogonality needs two distinct positions")
    A, B = basis[i], basis[j]
    channels = (sample_channel(basis.n, seed, stream) for stream in range(num_channels))
    if mutually_orthogonal(A, B, tol):
        worst = 0.0
        for channel in channels:
            ratio = column_dot_ratio(A, B, channel.H)
            worst = max(worst, ratio)
            if ratio > Tolerances.COLUMN_ORTHOGONAL:
                raise VerificationError(
                    f"Columns {i + 1} and {j + 1} are mutually orthogonal but not orthogonal "
                    f"under channel {channel.source} (ratio {ratio:.3e})"
                )
        return OrthogonalityOutcome(i, j, True, max_ratio=worst)
    worst = 0.0
    for channel in itertools.chain(channels, structured_channels(basis.n)):
        ratio = column_dot_ratio(A, B, channel.H)
        worst = max(worst, ratio)
        if ratio > Tolerances.COLUMN_WITNESS:
            return OrthogonalityOutcome(i, j, False, witness=channel, max_ratio=ratio)
    raise VerificationError(
        f"No witness channel for the conflicting pair ({i + 1}, {j + 1}); "
        f"largest ratio {worst:.3e}. Check the tolerance settings"
    )


def orthogonality_agreement(
    basis: CodeBasis, num_channels: int, seed: int, tol: float = None
) -> pd.DataFrame:
    """
    One row per pair (1-based): whether the matrices are mutually
    orthogonal, whether a witness channel exists, and whether the two
    agree (exactly one of them holds).
    """
    rows = []
    for i, j in itertools.combinations(range(basis.size), 2):
        is_mo = mutually_orthogonal(basis[i], basis[j], tol)
        try:
            outcome = column_orthogonality_test(basis, i, j, num_channels, seed, tol)
            witness = outcome.witness
            ratio = outcome.max_ratio
        except VerificationError as e:
            logger.warning("%s", e)
            witness, ratio = None, float("nan")
            if is_mo:
                # an orthogonality violation counts as a witness
                witness = Channel(np.eye(basis.n), label="violation")
        rows.append(
            {
                "i": i + 1,
                "j": j + 1,
                "mutually_orthogonal": is_mo,
                "witness_found": witness is not None,
                "witness_source": witness.source if witness is not None else "",
                "max_ratio": ratio,
                "agree": is_mo != (witness is not None),
            }
        )
    return pd.DataFrame(
        rows,
        columns=["i", "j", "mutually_orthogonal", "witness_found", "witness_source", "max_ratio", "agree"],
    )
