"""
Odd degree: no two invertible n x n matrices anticommute when n is odd,
since AB = -BA gives det(A) det(B) = (-1)^n det(B) det(A).
"""
import logging
import typing as tp
from dataclasses import dataclass

import numpy as np

from fastdec_utils.exceptions import ConstructionError
from fastdec_utils.lattice import gaussian_matrix
from fastdec_utils.matcore import anticommute, is_invertible
from fastdec_utils.utils.rng import make_rng

logger = logging.getLogger(__name__)


def check_odd_degree_rejection(n: int):
    """
    Raises
    ------
    `ConstructionError`
        If `n` is odd (or not positive): such dimensions hold no pair of
        anticommuting invertible matrices.
    """
    if n < 1 or n % 2:
        raise ConstructionError(
            f"Dimension {n} is odd: no two invertible {n}x{n} matrices anticommute"
        )


def determinant_gap(A, B) -> float:
    """
    |det(AB) - (-1)^n det(BA)|. Anticommuting pairs have gap 0; for odd
    n and invertible A, B it equals 2 |det A det B| > 0.
    """
    A = np.asarray(A, dtype=np.complex128)
    B = np.asarray(B, dtype=np.complex128)
    sign = -1.0 if A.shape[0] % 2 else 1.0
    return float(abs(np.linalg.det(A @ B) - sign * np.linalg.det(B @ A)))


@dataclass(frozen=True)
class OddDegreeReport:
    n: int
    pairs: int
    anticommuting: int
    certified: int

    @property
    def passed(self) -> bool:
        """No anticommuting pair and every pair ruled out by the determinant identity."""
        return self.anticommuting == 0 and self.certified == self.pairs


def odd_degree_validator(
    n: int,
    trials: int = 1000,
    seed: int = 0,
    candidates: tp.Iterable[tp.Tuple[np.ndarray, np.ndarray]] = None,
    tol: float = None,
) -> OddDegreeReport:
    """
    Tests seeded random invertible pairs (or the caller's `candidates`)
    in odd dimension `n` for anticommutation, and certifies each pair
    with the determinant identity.
    """
    if n % 2 == 0:
        raise ValueError(f"The odd-degree validator needs odd n, got {n}")
    if candidates is None:
        candidates = (
            (gaussian_matrix(rng, (n, n)), gaussian_matrix(rng, (n, n)))
            for rng in (make_rng(seed, trial) for trial in range(trials))
        )
    pairs = anticommuting = certified = 0
    for A, B in candidates:
        if not (is_invertible(A) and is_invertible(B)):
            continue
        pairs += 1
        if anticommute(A, B, tol):
            anticommuting += 1
            logger.warning("Found an anticommuting pair in odd dimension %d", n)
        scale = abs(np.linalg.det(A) * np.linalg.det(B))
        if determinant_gap(A, B) > scale:
            certified += 1
    return OddDegreeReport(n=n, pairs=pairs, anticommuting=anticommuting, certified=certified)
