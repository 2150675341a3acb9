"""
Explicit anticommuting and mutually orthogonal matrix families.

Everything is built from H_1 = diag(1, -1) and H_-1 = [[0, -1], [1, 0]]
with exact Gaussian-rational arithmetic, and checked exactly before
it's returned.
"""
from __future__ import annotations

import itertools
import logging
import typing as tp
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from fastdec_utils.construct.bounds import nu2
from fastdec_utils.construct.validators import check_odd_degree_rejection
from fastdec_utils.exceptions import ConstructionError, VerificationError
from fastdec_utils.matcore import GaussianMatrix, exact_anticommute, exact_mutually_orthogonal
from fastdec_utils.matcore.exact import kron_all, matmul_all
from fastdec_utils.mograph import normalize_to_anticommuting

logger = logging.getLogger(__name__)

FAMILY_KINDS = ("u", "anticommute", "mo", "hre")


@dataclass(frozen=True, eq=False)
class AnticommutingFamily:
    """
    Pairwise anticommuting invertible n x n matrices.
    """

    size: int
    members: tp.Tuple[GaussianMatrix, ...]
    name: str = ""
    exact: bool = True

    def __len__(self):
        return len(self.members)

    def complex_members(self) -> tp.List[np.ndarray]:
        return [A.to_complex() for A in self.members]

    def verify(self):
        """
        Raises
        ------
        `VerificationError`
            If a member is singular or of the wrong size, or two members
            don't anticommute.
        """
        for index, A in enumerate(self.members, start=1):
            if A.shape != (self.size, self.size):
                raise VerificationError(f"{self.name}: member {index} is {A.shape}, expected size {self.size}")
            if not A.is_invertible():
                raise VerificationError(f"{self.name}: member {index} is singular")
        for (i, A), (j, B) in itertools.combinations(enumerate(self.members, start=1), 2):
            if not exact_anticommute(A, B):
                raise VerificationError(f"{self.name}: members {i} and {j} don't anticommute")
        logger.debug("Verified %s: %d members of size %d", self.name, len(self), self.size)
        return self

    def kron_identity(self, factor: int) -> AnticommutingFamily:
        """A -> A (x) I_factor for every member."""
        identity = GaussianMatrix.identity(factor)
        return AnticommutingFamily(
            size=self.size * factor,
            members=tuple(A.kron(identity) for A in self.members),
            name=f"{self.name}(x)I{factor}",
            exact=self.exact,
        )


def h_matrices() -> tp.Tuple[GaussianMatrix, GaussianMatrix]:
    """(H_1, H_-1)"""
    h_1 = GaussianMatrix.from_parts([[1, 0], [0, -1]])
    h_minus_1 = GaussianMatrix.from_parts([[0, -1], [1, 0]])
    return h_1, h_minus_1


def _u_matrices(ell: int) -> tp.List[GaussianMatrix]:
    h_1, h_minus_1 = h_matrices()
    identity = GaussianMatrix.identity(2)
    matrices = []
    for p in range(1, ell + 1):
        head = [h_1] * (p - 1)
        tail = [identity] * (ell - p)
        matrices.append(kron_all(head + [h_1 @ h_minus_1] + tail))
        matrices.append(kron_all(head + [h_minus_1] + tail))
    return matrices


def u_family(ell: int) -> AnticommutingFamily:
    """
    U_1..U_2ell in dimension 2^ell:
    U_{2p-1} = H_1^(p-1) (x) H_1 H_-1 (x) I_2^(ell-p) and
    U_{2p} = H_1^(p-1) (x) H_-1 (x) I_2^(ell-p).
    Odd members are symmetric, even members skew-symmetric.
    """
    if ell < 1:
        raise ConstructionError(f"The U family needs ell >= 1, got {ell}")
    family = AnticommutingFamily(2 ** ell, tuple(_u_matrices(ell)), name=f"u:{ell}").verify()
    check_u_symmetries(family.members)
    return family


def check_u_symmetries(members: tp.Sequence[GaussianMatrix]):
    """
    Odd members symmetric, even members skew-symmetric and their
    product U_1 ... U_2ell symmetric.

    Raises
    ------
    `VerificationError`
        On the first property that fails.
    """
    for index, U in enumerate(members, start=1):
        symmetric = U.is_symmetric() if index % 2 else U.is_skew_symmetric()
        if not symmetric:
            raise VerificationError(f"U_{index} has the wrong symmetry")
    if members and not matmul_all(members).is_symmetric():
        raise VerificationError(f"The product of the {len(members)} U matrices isn't symmetric")


def u_product(ell: int) -> GaussianMatrix:
    """U_1 U_2 ... U_2ell, the identity for ell = 0."""
    return matmul_all(_u_matrices(ell), identity_size=2 ** ell)


def quaternion_basis_4x4(a, b) -> tp.Tuple[GaussianMatrix, GaussianMatrix, GaussianMatrix, GaussianMatrix]:
    """
    (I_4, e, f, ef) representing the quaternion algebra (a, b):
    e^2 = a, f^2 = b and fe = -ef.

    Raises
    ------
    `ConstructionError`
        If a or b is zero.
    """
    a, b = Fraction(a), Fraction(b)
    if a == 0 or b == 0:
        raise ConstructionError("Quaternion parameters must be nonzero")
    e = GaussianMatrix.from_parts([[0, a, 0, 0], [1, 0, 0, 0], [0, 0, 0, a], [0, 0, 1, 0]])
    f = GaussianMatrix.from_parts([[0, 0, b, 0], [0, 0, 0, -b], [1, 0, 0, 0], [0, -1, 0, 0]])
    ef = GaussianMatrix.from_parts(
        [[0, 0, 0, -a * b], [0, 0, b, 0], [0, -a, 0, 0], [1, 0, 0, 0]]
    )
    checks = {
        "e f = ef": (e @ f).equals(ef),
        "f e = -ef": (f @ e).equals(-ef),
        "e^2 = a": e.square_is_scalar(a),
        "f^2 = b": f.square_is_scalar(b),
    }
    failed = [name for name, ok in checks.items() if not ok]
    if failed:
        raise VerificationError(f"Quaternion relations failed: {', '.join(failed)}")
    return GaussianMatrix.identity(4), e, f, ef


def quaternion_complex_rep() -> tp.Tuple[GaussianMatrix, GaussianMatrix, GaussianMatrix]:
    """
    (i H_1, H_-1, i H_1 H_-1): generators e, f and ef of (-1, -1) in M_2(C).
    """
    h_1, h_minus_1 = h_matrices()
    return h_1.times_i(), h_minus_1, (h_1 @ h_minus_1).times_i()


def anticommuting_family(ell: int) -> AnticommutingFamily:
    """
    2ell+3 pairwise anticommuting invertible matrices in dimension
    2^(ell+1): U_p (x) I_2 for p = 1..2ell and P (x) m for m in
    (i H_1, H_-1, i H_1 H_-1), with P = U_1 ... U_2ell.
    """
    if ell < 0:
        raise ConstructionError(f"ell must be nonnegative, got {ell}")
    identity = GaussianMatrix.identity(2)
    product = u_product(ell)
    members = [U.kron(identity) for U in _u_matrices(ell)]
    members += [product.kron(m) for m in quaternion_complex_rep()]
    return AnticommutingFamily(2 ** (ell + 1), tuple(members), name=f"anticommute:{ell}").verify()


def skew_hermitian_family(ell: int) -> tp.List[GaussianMatrix]:
    """
    The anticommuting family with every Hermitian member multiplied by i.
    """
    skew = []
    for index, A in enumerate(anticommuting_family(ell).members, start=1):
        if A.is_hermitian():
            A = A.times_i()
        if not A.is_skew_hermitian():
            raise VerificationError(f"Member {index} is neither Hermitian nor skew-Hermitian")
        skew.append(A)
    return skew


def mutually_orthogonal_family_exact(ell: int) -> tp.List[GaussianMatrix]:
    """
    I followed by 2ell+3 skew-Hermitian pairwise anticommuting matrices,
    2ell+4 pairwise mutually orthogonal matrices in dimension 2^(ell+1).
    Verified exactly, including the normalization round trip.
    """
    skew = skew_hermitian_family(ell)
    family = [GaussianMatrix.identity(2 ** (ell + 1))] + skew
    for (i, A), (j, B) in itertools.combinations(enumerate(family, start=1), 2):
        if not exact_mutually_orthogonal(A, B):
            raise VerificationError(f"Members {i} and {j} are not mutually orthogonal")
    normalized = normalize_to_anticommuting(family)
    if not all(N.equals(S) for N, S in zip(normalized, skew)):
        raise VerificationError("Normalization against the identity changed the family")
    return family


def mutually_orthogonal_family(ell: int) -> tp.List[np.ndarray]:
    """
    Complex128 copy of `mutually_orthogonal_family_exact`.
    """
    return [A.to_complex() for A in mutually_orthogonal_family_exact(ell)]


def hre_conditions(A: GaussianMatrix) -> tp.Dict[str, bool]:
    """
    The three conditions A^2 = -I, A A* = I and A* = -A, exactly.
    Any two of them imply the third.
    """
    return {
        "square_minus_identity": A.square_is_scalar(-1),
        "unitary": A.is_unitary(),
        "skew_hermitian": A.is_skew_hermitian(),
    }


def hre_family(t: int) -> AnticommutingFamily:
    """
    2t+1 unitary, square -I, pairwise anticommuting matrices in
    dimension 2^t: the U family of size t and its product, with the
    symmetric members multiplied by i.
    """
    if t < 0:
        raise ConstructionError(f"t must be nonnegative, got {t}")
    members = []
    for U in _u_matrices(t) + [u_product(t)]:
        members.append(U.times_i() if U.is_symmetric() else U)
    family = AnticommutingFamily(2 ** t, tuple(members), name=f"hre:{t}").verify()
    for index, A in enumerate(family.members, start=1):
        failed = [name for name, ok in hre_conditions(A).items() if not ok]
        if failed:
            raise VerificationError(f"hre:{t} member {index} fails {', '.join(failed)}")
    return family


def build_family(kind: str, ell: int) -> tp.List[GaussianMatrix]:
    """
    Members of the family `kind` ('u', 'anticommute', 'mo' or 'hre');
    for 'hre' the parameter is t.
    """
    if kind == "u":
        return list(u_family(ell).members)
    if kind == "anticommute":
        return list(anticommuting_family(ell).members)
    if kind == "mo":
        return mutually_orthogonal_family_exact(ell)
    if kind == "hre":
        return list(hre_family(ell).members)
    raise ConstructionError(f"Unknown family '{kind}'. Expected one of {', '.join(FAMILY_KINDS)}")


def family_for_dimension(n: int, kind: str) -> tp.List[GaussianMatrix]:
    """
    The largest family of `kind` in dimension 2^t, t = nu2(n), embedded
    in M_n as A (x) I_(n / 2^t).

    Raises
    ------
    `ConstructionError`
        For odd n, where no two invertible matrices anticommute.
    """
    check_odd_degree_rejection(n)
    t = nu2(n)
    parameter = t if kind in ("u", "hre") else t - 1
    members = build_family(kind, parameter)
    factor = n // 2 ** t
    if factor == 1:
        return members
    identity = GaussianMatrix.identity(factor)
    return [A.kron(identity) for A in members]
