from .channel import Channel, gaussian_matrix, sample_channel
from .lattice import LatticeMatrix, build_T, permute_T
from .qr import QRFactors, allowed_pattern, off_block_magnitude, ordered_qr, verify_block_structure
from .witnesses import (
    OrthogonalityOutcome,
    column_dot_ratio,
    column_orthogonality_test,
    structured_channels,
    orthogonality_agreement,
)
from fastdec_utils.utils.rng import make_rng
