"""
Code basis JSON files:
`{"name": ..., "n": 2, "l": 4, "matrices": [<matrix>, ...]}`.
"""
import json
import logging
import typing as tp

from fastdec_utils.codes.models import CodeBasis
from fastdec_utils.exceptions import CodeBasisError, CodeFormatError
from fastdec_utils.matcore import decode_matrix, encode_matrix

logger = logging.getLogger(__name__)


def encode_code(basis: CodeBasis) -> tp.Dict[str, tp.Any]:
    return {
        "name": basis.name,
        "n": basis.n,
        "l": basis.l,
        "matrices": [encode_matrix(A) for A in basis.matrices],
    }


def decode_code(doc: tp.Any, tol: float = None) -> CodeBasis:
    """
    Builds a validated code basis from a decoded JSON document.

    Raises
    ------
    `CodeFormatError`
        If the document is malformed.
    `CodeBasisError`
        If a matrix is singular or the family is dependent; the
        error's `index` names the offending matrix.
    """
    if not isinstance(doc, dict):
        raise CodeFormatError("A code basis must be a JSON object")
    try:
        n = int(doc["n"])
        l = int(doc["l"])
        raw_matrices = doc["matrices"]
    except (KeyError, TypeError, ValueError) as e:
        raise CodeFormatError("The code basis is missing 'n', 'l' or 'matrices'", e) from e
    if not isinstance(raw_matrices, list):
        raise CodeFormatError("'matrices' must be a list")
    matrices = tuple(
        decode_matrix(item, f"basis matrix {index}")
        for index, item in enumerate(raw_matrices, start=1)
    )
    basis = CodeBasis(
        n=n, l=l, matrices=matrices, name=doc.get("name"), validated=False
    )
    basis.validate(tol)
    return basis


def save_code(basis: CodeBasis, path: str):
    with open(path, "w") as f:
        json.dump(encode_code(basis), f, indent=2)
    logger.info("Saved %s to '%s'", basis, path)


def load_code(path: str, tol: float = None) -> CodeBasis:
    """
    Reads and validates a code basis JSON file.

    Raises
    ------
    `CodeFormatError`
        If the file is not valid JSON or is malformed.
    `CodeBasisError`
        If the basis breaks an invariant.
    """
    try:
        with open(path) as f:
            doc = json.load(f)
    except json.JSONDecodeError as e:
        raise CodeFormatError(f"File '{path}' is not valid JSON", e) from e
    try:
        basis = decode_code(doc, tol)
    except CodeBasisError as e:
        logger.debug("Rejected basis file '%s' at index %s", path, e.index)
        raise
    logger.info("Loaded %s from '%s'", basis, path)
    return basis
