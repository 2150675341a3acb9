from .bounds import (
    AlgebraParams,
    BoundReport,
    anticommute_bound,
    bounds_table,
    hre_bound,
    mo_group_bound,
    nu2,
)
from .validators import OddDegreeReport, check_odd_degree_rejection, determinant_gap, odd_degree_validator
from .families import (
    FAMILY_KINDS,
    AnticommutingFamily,
    anticommuting_family,
    build_family,
    check_u_symmetries,
    family_for_dimension,
    h_matrices,
    hre_conditions,
    hre_family,
    mutually_orthogonal_family,
    mutually_orthogonal_family_exact,
    quaternion_basis_4x4,
    quaternion_complex_rep,
    skew_hermitian_family,
    u_family,
    u_product,
)
