"""
Normalization of mutually orthogonal families and the inequalities a
fast decodable code must satisfy.
"""
import itertools
import logging
import math
import typing as tp

import numpy as np

from fastdec_utils.codes import CodeBasis
from fastdec_utils.exceptions import VerificationError
from fastdec_utils.matcore import (
    GaussianMatrix,
    anticommute,
    as_cmatrix,
    exact_anticommute,
    is_real_independent,
    is_skew_hermitian,
)
from fastdec_utils.mograph.graph import conflict_graph
from fastdec_utils.mograph.partition import BoundCheck, ComplexityReport, optimal_partition

logger = logging.getLogger(__name__)


def _normalize_exact(family: tp.Sequence[GaussianMatrix]) -> tp.List[GaussianMatrix]:
    head_inverse = family[0].inverse()
    normalized = [head_inverse @ A for A in family[1:]]
    for index, A in enumerate(normalized, start=2):
        if not A.is_skew_hermitian():
            raise VerificationError(f"Normalized member {index} is not skew-Hermitian")
    for (i, A), (j, B) in itertools.combinations(enumerate(normalized, start=2), 2):
        if not exact_anticommute(A, B):
            raise VerificationError(f"Normalized members {i} and {j} do not anticommute")
    return normalized


def _normalize_numeric(family: tp.Sequence, tol: float) -> tp.List[np.ndarray]:
    matrices = [as_cmatrix(A, f"family member {i}") for i, A in enumerate(family, start=1)]
    head = matrices[0]
    normalized = [np.linalg.solve(head, A) for A in matrices[1:]]
    for index, A in enumerate(normalized, start=2):
        if not is_skew_hermitian(A, tol):
            raise VerificationError(
                f"Normalized member {index} is not skew-Hermitian; "
                "the family is not mutually orthogonal or is numerically degenerate"
            )
    for (i, A), (j, B) in itertools.combinations(enumerate(normalized, start=2), 2):
        if not anticommute(A, B, tol):
            raise VerificationError(f"Normalized members {i} and {j} do not anticommute")
    return normalized


def normalize_to_anticommuting(family: tp.Sequence, tol: float = None) -> list:
    """
    Maps a pairwise mutually orthogonal invertible family
    {A_1, ..., A_m} to {A_1^-1 A_2, ..., A_1^-1 A_m}, skew-Hermitian
    and pairwise anticommuting.

    Families of `GaussianMatrix` are normalized and checked exactly.

    Raises
    ------
    `VerificationError`
        If a normalized member fails either property.
    """
    if len(family) <= 1:
        return []
    if all(isinstance(A, GaussianMatrix) for A in family):
        return _normalize_exact(family)
    return _normalize_numeric(family, tol)


def _check(name: str, lhs: int, rhs: int, relation: str = "<=") -> BoundCheck:
    compare = {
        "<=": lambda a, b: a <= b,
        ">=": lambda a, b: a >= b,
        "==": lambda a, b: a == b,
    }[relation]
    return BoundCheck(name=name, lhs=int(lhs), rhs=int(rhs), relation=relation, passed=compare(lhs, rhs))


def _group_checks(report: ComplexityReport, n: int, l: int, division: bool) -> tp.List[BoundCheck]:
    from fastdec_utils.construct import nu2

    partition = report.partition
    sizes = partition.sizes
    total = sum(sizes)
    k = partition.k
    n2 = n * n
    checks = [
        _check("groups_total_le_n2_plus_k", total, n2 + k),
        _check("groups_le_n2", partition.g, n2),
        _check("groups_le_2nu2_plus_4", partition.g, 2 * nu2(n) + 4),
    ]
    large = [size for size in sizes if size >= 2]
    if large:
        checks.append(_check("groups_total_le_n2_plus_ni_minus_1", total, n2 + min(large) - 1))
    violations = 0
    for size in sizes:
        others = total - size
        if others >= n2 and not (others == n2 and size == 1):
            violations += 1
    checks.append(_check("complement_groups_reach_n2_only_with_singleton", violations, 0, "=="))
    if division:
        checks.append(_check("division_groups_le_4", partition.g, 4))
        checks.append(_check("division_exponent_ge_ceil_l_half", report.exponent, math.ceil(l / 2)))
    return checks


def _skew_hermitian_checks(basis: CodeBasis, report: ComplexityReport, tol: float) -> tp.List[BoundCheck]:
    """
    One representative per group, normalized against the first group's
    representative, gives g-1 skew-Hermitian pairwise mutually
    orthogonal matrices.
    """
    representatives = [basis[group[0]] for group in report.partition.groups]
    try:
        normalized = normalize_to_anticommuting(representatives, tol)
        skew = len(normalized)
    except VerificationError as e:
        logger.debug("Representative normalization failed: %s", e)
        normalized, skew = [], -1
    n2 = basis.n * basis.n
    checks = [
        _check("normalized_representatives_skew_hermitian", skew, report.partition.g - 1, "=="),
        _check("skew_hermitian_family_le_n2_minus_1", len(normalized), n2 - 1),
    ]
    if normalized:
        checks.append(
            _check(
                "normalized_representatives_real_independent",
                int(is_real_independent(normalized, tol)), 1, "==",
            )
        )
    return checks


def verify_theorem_bounds(
    report: ComplexityReport,
    n: int,
    l: int,
    division: bool = False,
    basis: CodeBasis = None,
    tol: float = None,
) -> tp.List[BoundCheck]:
    """
    Evaluates every inequality that applies to the report.

    Parameters
    ----------
    `report`: ComplexityReport
        Result of the partition search for a code.
    `n`: int
        Matrix size of the code.
    `l`: int
        Complex symbols per codeword (the basis has 2l matrices).
    `division`: bool
        The basis matrices come from a division algebra.
    `basis`: CodeBasis
        When given, the group representatives are normalized and the
        skew-Hermitian family bounds are evaluated as well.

    Returns
    -------
    List of checks. A failing check means an implementation bug.
    """
    checks = []
    n2 = n * n
    if report.fast_decodable:
        checks.extend(_group_checks(report, n, l, division))
        if basis is not None:
            checks.extend(_skew_hermitian_checks(basis, report, tol))
    if l == n2:
        checks.append(_check("full_rate_exponent_ge_n2", report.exponent, n2, ">="))
        checks.append(_check("full_rate_exponent_ge_n2_plus_1", report.exponent, n2 + 1, ">="))
        checks.append(_check("full_rate_no_g_group", 0 if report.g_group is None else 1, 0, "=="))
        if report.g_group is not None:
            checks.append(_check("full_rate_g_group_le_2", report.g_group, 2))
    for check in checks:
        if not check.passed:
            logger.warning("Bound check %s failed: %d %s %d", check.name, check.lhs, check.relation, check.rhs)
    return checks


def analyze_code(
    basis: CodeBasis,
    tol: float = None,
    division: bool = False,
    exact_limit: int = None,
) -> ComplexityReport:
    """
    Conflict graph, optimal partition and bound checks of a code.
    """
    graph = conflict_graph(basis, tol)
    report = optimal_partition(graph, exact_limit)
    checks = verify_theorem_bounds(report, basis.n, basis.l, division=division, basis=basis, tol=tol)
    logger.info(
        "Analyzed %s: exponent %d, fast decodable %s", basis, report.exponent, report.fast_decodable
    )
    return report.with_checks(checks)
