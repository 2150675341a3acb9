"""
Built-in codes.

Real symbols are ordered (Re x1, Im x1, Re x2, Im x2, ...) and every
basis matrix is the codeword evaluated at a unit coordinate vector.
"""
import numpy as np

from fastdec_utils.codes.models import CodeBasis, basis_from_codeword, complex_symbols

SILVER_T = np.array([[1, 0], [0, -1]], dtype=np.complex128)
SILVER_M = np.array(
    [[1 + 1j, -1 + 2j], [1 + 2j, 1 - 1j]], dtype=np.complex128
) / np.sqrt(7)


def alamouti_block(a: complex, b: complex) -> np.ndarray:
    """
    X(a, b) = [[a, -conj(b)], [b, conj(a)]].
    """
    return np.array([[a, -np.conj(b)], [b, np.conj(a)]], dtype=np.complex128)


def alamouti_codeword(s) -> np.ndarray:
    x = complex_symbols(s)
    return alamouti_block(x[0], x[1])


def silver_codeword(s) -> np.ndarray:
    """
    X(x1, x2) + T X(z1, z2) with (z1, z2)^t = M (x3, x4)^t.
    """
    x = complex_symbols(s)
    z = SILVER_M @ x[2:4]
    return alamouti_block(x[0], x[1]) + SILVER_T @ alamouti_block(z[0], z[1])


def alamouti_code() -> CodeBasis:
    """
    The 2x2 Alamouti code, n=2 and l=2:
    A_1 = I, A_2 = diag(i, -i), A_3 = [[0, -1], [1, 0]], A_4 = [[0, i], [i, 0]].
    """
    return basis_from_codeword(alamouti_codeword, n=2, l=2, name="alamouti")


def silver_code() -> CodeBasis:
    """
    The 2x2 full-rate Silver code, n=2 and l=4. Its first four
    basis matrices are the Alamouti ones.
    """
    return basis_from_codeword(silver_codeword, n=2, l=4, name="silver")


def family_code(ell: int) -> CodeBasis:
    """
    Code whose 2*ell+4 basis matrices are the pairwise mutually
    orthogonal family of dimension 2^(ell+1).
    """
    from fastdec_utils.construct import mutually_orthogonal_family

    members = mutually_orthogonal_family(ell)
    n = 2 ** (ell + 1)
    return CodeBasis(
        n=n, l=ell + 2, matrices=tuple(members), name=f"mo:{ell}"
    )


def builtin_code(name: str) -> CodeBasis:
    """
    Resolves 'alamouti', 'silver' or 'mo:<ell>'.

    Raises
    ------
    `ValueError`
        On unknown names.
    """
    key = name.strip().lower()
    if key == "alamouti":
        return alamouti_code()
    if key == "silver":
        return silver_code()
    if key.startswith("mo:"):
        try:
            ell = int(key[3:])
        except ValueError as e:
            raise ValueError(f"Invalid family size in '{name}'") from e
        return family_code(ell)
    raise ValueError(
        f"Unknown built-in code '{name}'. Expected 'alamouti', 'silver' or 'mo:<ell>'"
    )
