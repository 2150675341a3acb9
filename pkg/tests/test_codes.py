import itertools
import json
import os
import tempfile

import numpy as np

from fastdec_utils.codes import (
    CodeBasis,
    alamouti_code,
    assemble,
    builtin_code,
    complex_symbols,
    decode_code,
    encode_code,
    load_code,
    pam_constellation,
    save_code,
    silver_code,
)
from fastdec_utils.exceptions import CodeBasisError, CodeFormatError
from fastdec_utils.testing import BaseTest
from fastdec_utils.utils.rng import make_rng


class BuiltinCodeTests(BaseTest):
    """
    Tests the built-in Alamouti, Silver and family codes.
    """

    def test_alamouti_basis(self):
        basis = alamouti_code()
        self.assertEqual((basis.n, basis.l, basis.size), (2, 2, 4))
        self.assertMatrixClose(basis[0], np.eye(2))
        self.assertMatrixClose(basis[1], [[1j, 0], [0, -1j]])
        self.assertMatrixClose(basis[2], [[0, -1], [1, 0]])
        self.assertMatrixClose(basis[3], [[0, 1j], [1j, 0]], up_to_sign=True)

    def test_silver_extends_alamouti(self):
        silver, alamouti = silver_code(), alamouti_code()
        self.assertTrue(silver.full_rate)
        for index in range(4):
            self.assertMatrixClose(silver[index], alamouti[index])

    def test_assemble(self):
        basis = alamouti_code()
        s = [1.0, 2.0, 3.0, 4.0]
        x1, x2 = complex_symbols(s)
        expected = [[x1, -np.conj(x2)], [x2, np.conj(x1)]]
        self.assertMatrixClose(assemble(basis, s), expected)

    def test_assemble_is_real_linear(self):
        rng = make_rng(12, 0)
        for basis in (alamouti_code(), silver_code()):
            for _ in range(50):
                a, b = rng.standard_normal(2)
                s = rng.standard_normal(basis.size)
                t = rng.standard_normal(basis.size)
                with self.subTest(code=basis.name):
                    self.assertMatrixClose(
                        assemble(basis, a * s + b * t),
                        a * assemble(basis, s) + b * assemble(basis, t),
                        atol=1e-12,
                    )

    def test_silver_differences_are_full_rank(self):
        """
        Distinct codewords over 2-PAM differ by an invertible matrix:
        every nonzero difference vector in {-2, 0, 2}^8 has |det| well
        away from zero.
        """
        basis = silver_code()
        stacked = np.array([basis[index] for index in range(basis.size)])
        differences = np.array(
            [d for d in itertools.product((-2.0, 0.0, 2.0), repeat=basis.size) if any(d)]
        )
        codewords = np.einsum("kr,rij->kij", differences, stacked)
        self.assertEqual(len(codewords), 3 ** 8 - 1)
        self.assertGreater(np.min(np.abs(np.linalg.det(codewords))), 0.4)

    def test_family_code(self):
        basis = builtin_code("mo:1")
        self.assertEqual((basis.n, basis.l), (4, 3))
        self.assertEqual(basis.name, "mo:1")

    def test_unknown_builtin(self):
        for name in ("golden", "mo:x"):
            with self.subTest(name=name):
                with self.assertRaises(ValueError):
                    builtin_code(name)


class CodeBasisTests(BaseTest):
    """
    Tests the invariants enforced on a code basis.
    """

    def test_singular_matrix_is_named(self):
        matrices = (np.eye(2), np.array([[1, 1], [1, 1]]))
        with self.assertRaises(CodeBasisError) as ctx:
            CodeBasis(n=2, l=1, matrices=matrices)
        self.assertEqual(ctx.exception.index, 2)

    def test_dependent_family_is_named(self):
        matrices = tuple(alamouti_code().matrices[:3]) + (2 * np.eye(2),)
        with self.assertRaises(CodeBasisError) as ctx:
            CodeBasis(n=2, l=2, matrices=matrices)
        self.assertEqual(ctx.exception.index, 4)

    def test_duplicate_matrix(self):
        matrices = (np.eye(2), np.eye(2))
        with self.assertRaises(CodeBasisError) as ctx:
            CodeBasis(n=2, l=1, matrices=matrices)
        self.assertEqual(ctx.exception.index, 2)

    def test_dimension_errors(self):
        with self.assertRaises(CodeBasisError):
            CodeBasis(n=1, l=2, matrices=(np.eye(1),) * 4)
        with self.assertRaises(CodeBasisError):
            CodeBasis(n=2, l=1, matrices=(np.eye(2),))
        with self.assertRaises(CodeBasisError) as ctx:
            CodeBasis(n=2, l=1, matrices=(np.eye(2), np.eye(3)))
        self.assertEqual(ctx.exception.index, 2)

    def test_matrices_are_read_only(self):
        basis = alamouti_code()
        with self.assertRaises(ValueError):
            basis[0][0, 0] = 5


class CodeFileTests(BaseTest):
    """
    Tests reading and writing code basis files.
    """

    def setUp(self):
        self.tmpdir = tempfile.TemporaryDirectory()
        self.path = os.path.join(self.tmpdir.name, "code.json")

    def tearDown(self):
        self.tmpdir.cleanup()

    def test_save_and_load(self):
        basis = silver_code()
        save_code(basis, self.path)
        loaded = load_code(self.path)
        self.assertEqual((loaded.n, loaded.l, loaded.name), (2, 4, "silver"))
        for original, read in zip(basis.matrices, loaded.matrices):
            np.testing.assert_array_equal(original, read)

    def test_invalid_json(self):
        with open(self.path, "w") as f:
            f.write("{not json")
        with self.assertRaises(CodeFormatError):
            load_code(self.path)

    def test_missing_keys(self):
        with self.assertRaises(CodeFormatError):
            decode_code({"n": 2, "matrices": []})
        with self.assertRaises(CodeFormatError):
            decode_code({"n": 2, "l": 1, "matrices": "none"})

    def test_singular_matrix_in_file(self):
        doc = encode_code(alamouti_code())
        doc["matrices"][2] = {"n_rows": 2, "n_cols": 2, "entries": [[0, 0]] * 4}
        with open(self.path, "w") as f:
            json.dump(doc, f)
        with self.assertRaises(CodeBasisError) as ctx:
            load_code(self.path)
        self.assertEqual(ctx.exception.index, 3)


class ConstellationTests(BaseTest):
    def test_pam(self):
        self.assertEqual(pam_constellation(4).values, (-3.0, -1.0, 1.0, 3.0))
        self.assertEqual(pam_constellation(2).size, 2)

    def test_invalid_pam(self):
        for q in (0, 3, -2):
            with self.subTest(q=q):
                with self.assertRaises(ValueError):
                    pam_constellation(q)
