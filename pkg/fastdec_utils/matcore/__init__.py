from .linalg import (
    CMatrix,
    RVector,
    anticommute,
    as_cmatrix,
    dagger,
    frobenius,
    herm_inner,
    hermitian_parts,
    is_hermitian,
    is_invertible,
    is_real_independent,
    is_skew_hermitian,
    is_square,
    kronecker,
    kronecker_all,
    real_dot_identity_check,
    real_matrix,
    real_rank,
    unvec_r_mat,
    vec_c,
    vec_r,
    vec_r_mat,
)
from .exact import GaussianMatrix, exact_anticommute, exact_mutually_orthogonal
from .codec import decode_matrix, encode_matrix
