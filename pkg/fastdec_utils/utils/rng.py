"""
Seeded random streams.

Every randomized operation takes a 64-bit seed and a stream number; the
stream seed is `splitmix64(seed + stream * GAMMA)` and feeds a numpy PCG64
generator, so results only depend on (seed, stream) and never on the
order in which streams are consumed.
"""
import numpy as np

from fastdec_utils.constants import Golden


def splitmix64(value: int) -> int:
    """
    One output of the splitmix64 mixer for the state `value`.
    """
    z = (value + Golden.GAMMA) & Golden.MASK
    z = ((z ^ (z >> 30)) * Golden.MIX_1) & Golden.MASK
    z = ((z ^ (z >> 27)) * Golden.MIX_2) & Golden.MASK
    return z ^ (z >> 31)


def derive_seed(seed: int, stream: int = 0) -> int:
    """
    Seed of the `stream`-th independent stream of `seed`.
    """
    base = (int(seed) + int(stream) * Golden.GAMMA) & Golden.MASK
    return splitmix64(base)


def make_rng(seed: int, stream: int = 0) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(derive_seed(seed, stream)))
