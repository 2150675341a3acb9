"""
JSON encoding of complex matrices:
`{"n_rows": 2, "n_cols": 2, "entries": [[re, im], ...]}`, row-major.

Floats are written with python's shortest round-trip repr, so a
decode of an encode gives back the same bits.
"""
import typing as tp

import numpy as np

from fastdec_utils.exceptions import CodeFormatError, MatrixShapeError
from fastdec_utils.matcore.linalg import as_cmatrix
from fastdec_utils.utils.functional import is_iter


def encode_matrix(A) -> tp.Dict[str, tp.Any]:
    A = as_cmatrix(A)
    n_rows, n_cols = A.shape
    return {
        "n_rows": int(n_rows),
        "n_cols": int(n_cols),
        "entries": [[float(z.real), float(z.imag)] for z in A.ravel(order="C")],
    }


def decode_matrix(doc: tp.Any, name: str = "matrix") -> np.ndarray:
    """
    Reads a matrix document.

    Raises
    ------
    `CodeFormatError`
        If the document is malformed, the entry count doesn't match
        the declared shape or some entry is not finite.
    """
    if not isinstance(doc, dict):
        raise CodeFormatError(f"The {name} must be a JSON object, got {type(doc).__name__}")
    try:
        n_rows = int(doc["n_rows"])
        n_cols = int(doc["n_cols"])
        entries = doc["entries"]
    except (KeyError, TypeError, ValueError) as e:
        raise CodeFormatError(f"The {name} is missing 'n_rows', 'n_cols' or 'entries'", e) from e
    if n_rows < 1 or n_cols < 1:
        raise CodeFormatError(f"The {name} has a non-positive dimension")
    if not is_iter(entries) or isinstance(entries, (str, dict)):
        raise CodeFormatError(f"The 'entries' of the {name} must be a list")
    entries = list(entries)
    if len(entries) != n_rows * n_cols:
        raise CodeFormatError(
            f"The {name} declares {n_rows}x{n_cols} but has {len(entries)} entries"
        )
    values = np.empty(n_rows * n_cols, dtype=np.complex128)
    for position, pair in enumerate(entries):
        try:
            re, im = pair
            values[position] = complex(float(re), float(im))
        except (TypeError, ValueError) as e:
            raise CodeFormatError(
                f"Entry {position} of the {name} is not a [re, im] pair", e
            ) from e
    try:
        return as_cmatrix(values.reshape((n_rows, n_cols)), name)
    except MatrixShapeError as e:
        raise CodeFormatError(f"Invalid {name}", e) from e
