from __future__ import annotations

import logging
import typing as tp
from dataclasses import dataclass, field

import numpy as np

from fastdec_utils.exceptions import CodeBasisError, MatrixShapeError
from fastdec_utils.matcore import as_cmatrix, is_invertible, real_rank
from fastdec_utils.utils import any_duplicated

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class CodeBasis:
    """
    The 2l basis matrices A_1..A_2l of a linear space-time block code
    X = sum s_i A_i over n transmit antennas and n time slots.

    Matrices are kept read-only; positions are 0-based in code and
    reported 1-based in errors.
    """

    n: int
    l: int
    matrices: tp.Tuple[np.ndarray, ...]
    name: tp.Optional[str] = None
    validated: bool = field(default=True, repr=False)

    def __post_init__(self):
        if self.n < 1 or self.l < 1:
            raise CodeBasisError(f"Code dimensions must be positive, got n={self.n}, l={self.l}")
        if self.l > self.n * self.n:
            raise CodeBasisError(f"Rate l={self.l} exceeds n^2={self.n * self.n}")
        if len(self.matrices) != 2 * self.l:
            raise CodeBasisError(
                f"Expected 2l={2 * self.l} basis matrices, got {len(self.matrices)}"
            )
        frozen = []
        for index, A in enumerate(self.matrices, start=1):
            try:
                arr = as_cmatrix(A, f"basis matrix {index}").copy()
            except MatrixShapeError as e:
                raise CodeBasisError(f"Basis matrix {index} is invalid", index, e) from e
            if arr.shape != (self.n, self.n):
                raise CodeBasisError(
                    f"Basis matrix {index} has shape {arr.shape}, expected ({self.n}, {self.n})",
                    index,
                )
            arr.setflags(write=False)
            frozen.append(arr)
        object.__setattr__(self, "matrices", tuple(frozen))
        if self.validated:
            self.validate()

    def validate(self, tol: float = None):
        """
        Checks that every A_i is invertible and that the family
        is linearly independent over the reals.

        Raises
        ------
        `CodeBasisError`
            Naming the 1-based index of the first singular matrix, or
            of the first matrix in the real span of the ones before it.
        """
        for index, A in enumerate(self.matrices, start=1):
            if not is_invertible(A, tol):
                raise CodeBasisError(f"Basis matrix A_{index} is not invertible", index)
        keys = [A.tobytes() for A in self.matrices]
        if any_duplicated(keys):
            seen = {}
            for index, key in enumerate(keys, start=1):
                if key in seen:
                    raise CodeBasisError(
                        f"Basis matrix A_{index} duplicates A_{seen[key]}: "
                        "the basis is linearly dependent",
                        index,
                    )
                seen[key] = index
        rank = real_rank(self.matrices, tol)
        if rank != 2 * self.l:
            index = next(
                k for k in range(2, len(self.matrices) + 1)
                if real_rank(self.matrices[:k], tol) < k
            )
            raise CodeBasisError(
                f"The basis is linearly dependent over the reals (rank {rank} < {2 * self.l}); "
                f"A_{index} lies in the span of the matrices before it",
                index,
            )
        logger.debug("Validated code basis '%s' (n=%d, l=%d)", self.name, self.n, self.l)

    @property
    def size(self) -> int:
        """Number of real symbols, 2l."""
        return 2 * self.l

    @property
    def full_rate(self) -> bool:
        return self.l == self.n * self.n

    def __len__(self):
        return self.size

    def __getitem__(self, idx) -> np.ndarray:
        return self.matrices[idx]

    def __str__(self):
        return f"'{self.name or 'unnamed'}' code (n={self.n}, l={self.l})"

    def __repr__(self):
        return f"<CodeBasis: {str(self)}>"


def assemble(basis: CodeBasis, s) -> np.ndarray:
    """
    The codeword X = sum_i s_i A_i.

    Raises
    ------
    `MatrixShapeError`
        If `s` doesn't have 2l entries.
    """
    s = np.asarray(s, dtype=np.float64).ravel()
    if s.size != basis.size:
        raise MatrixShapeError(f"Expected {basis.size} real symbols, got {s.size}")
    return np.tensordot(s, np.stack(basis.matrices), axes=1)


def basis_from_codeword(
    codeword: tp.Callable[[np.ndarray], np.ndarray],
    n: int,
    l: int,
    name: str = None,
) -> CodeBasis:
    """
    Builds the basis of a real-linear codeword map by evaluating
    it at the 2l unit coordinate vectors.
    """
    matrices = []
    for i in range(2 * l):
        unit = np.zeros(2 * l)
        unit[i] = 1.0
        matrices.append(np.asarray(codeword(unit), dtype=np.complex128))
    return CodeBasis(n=n, l=l, matrices=tuple(matrices), name=name)


def complex_symbols(s) -> np.ndarray:
    """
    Pairs real symbols (Re x1, Im x1, Re x2, ...) into complex ones.
    """
    s = np.asarray(s, dtype=np.float64).ravel()
    return s[0::2] + 1j * s[1::2]


@dataclass(frozen=True)
class Constellation:
    """
    The effective real alphabet S; values are distinct and ascending.
    """

    values: tp.Tuple[float, ...]

    def __post_init__(self):
        values = tuple(float(v) for v in self.values)
        if not values:
            raise ValueError("A constellation needs at least one value")
        if not all(np.isfinite(values)):
            raise ValueError("Constellation values must be finite")
        if any_duplicated(list(values)):
            raise ValueError(f"Constellation values must be distinct, got {values}")
        object.__setattr__(self, "values", tuple(sorted(values)))

    @property
    def size(self) -> int:
        return len(self.values)

    def __len__(self):
        return self.size

    def as_array(self) -> np.ndarray:
        return np.array(self.values, dtype=np.float64)


def pam_constellation(q: int) -> Constellation:
    """
    The q-PAM alphabet {+-1, +-3, ..., +-(q-1)} for even q.
    """
    if q < 2 or q % 2:
        raise ValueError(f"PAM size must be a positive even integer, got {q}")
    return Constellation(tuple(range(-(q - 1), q, 2)))
