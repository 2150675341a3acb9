"""
Rayleigh channel draws.
"""
import logging
import typing as tp
from dataclasses import dataclass

import numpy as np

from fastdec_utils.constants import Tolerances
from fastdec_utils.exceptions import ChannelSamplingError
from fastdec_utils.matcore import as_cmatrix
from fastdec_utils.utils.rng import make_rng

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class Channel:
    """
    An n x n channel matrix H and where it came from: the
    (seed, stream) pair of a random draw, or a label for fixed channels.
    """

    H: np.ndarray
    seed: tp.Optional[int] = None
    stream: tp.Optional[int] = None
    label: tp.Optional[str] = None

    def __post_init__(self):
        H = as_cmatrix(self.H, "channel matrix").copy()
        H.setflags(write=False)
        object.__setattr__(self, "H", H)

    @property
    def n(self) -> int:
        return self.H.shape[0]

    @property
    def source(self) -> str:
        if self.label is not None:
            return self.label
        return f"seed={self.seed},stream={self.stream}"

    def __repr__(self):
        return f"<Channel {self.n}x{self.n} {self.source}>"


def gaussian_matrix(rng: np.random.Generator, shape, variance: float = 1.0) -> np.ndarray:
    """
    Circularly symmetric complex Gaussian entries of the given
    variance: real and imaginary parts each N(0, variance/2).
    """
    scale = np.sqrt(variance / 2.0)
    return scale * (rng.standard_normal(shape) + 1j * rng.standard_normal(shape))


def sample_channel(n: int, seed: int, stream: int = 0) -> Channel:
    """
    Draws H with i.i.d. CN(0, 1) entries from the (seed, stream)
    random stream, redrawing while |det H| is below the degeneracy
    threshold.

    Raises
    ------
    `ChannelSamplingError`
        If every retry produced a near-singular matrix.
    """
    rng = make_rng(seed, stream)
    for attempt in range(Tolerances.CHANNEL_RETRIES):
        H = gaussian_matrix(rng, (n, n))
        if abs(np.linalg.det(H)) >= Tolerances.CHANNEL_DETERMINANT:
            if attempt:
                logger.debug("Channel (seed=%d, stream=%d) redrawn %d times", seed, stream, attempt)
            return Channel(H, seed=seed, stream=stream)
    raise ChannelSamplingError(
        f"No channel with |det H| >= {Tolerances.CHANNEL_DETERMINANT} after "
        f"{Tolerances.CHANNEL_RETRIES} draws (seed={seed}, stream={stream})"
    )
