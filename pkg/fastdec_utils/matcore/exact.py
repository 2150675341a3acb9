"""
Exact matrices over the Gaussian rationals Q(i).

A `GaussianMatrix` keeps its real and imaginary parts as numpy object
arrays of `fractions.Fraction`, so products and predicates carry no
rounding at all. All built-in constructions are made of these.
"""
from __future__ import annotations

import functools
import typing as tp
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from fastdec_utils.exceptions import MatrixShapeError


def _rational_array(values) -> np.ndarray:
    arr = np.array(values, dtype=object)
    if arr.ndim != 2:
        raise MatrixShapeError(f"Expected a two dimensional array, got shape {arr.shape}")
    return np.vectorize(Fraction, otypes=[object])(arr)


@dataclass(frozen=True, eq=False)
class GaussianMatrix:
    """
    Matrix with entries re + i*im, re and im rational.
    """

    re: np.ndarray
    im: np.ndarray

    def __post_init__(self):
        if self.re.shape != self.im.shape:
            raise MatrixShapeError(
                f"Real part {self.re.shape} and imaginary part {self.im.shape} differ"
            )

    @classmethod
    def from_parts(cls, re, im=None) -> GaussianMatrix:
        re = _rational_array(re)
        im = _rational_array(im) if im is not None else _rational_array(np.zeros(re.shape, dtype=int))
        return cls(re, im)

    @classmethod
    def identity(cls, n: int) -> GaussianMatrix:
        return cls.from_parts(np.eye(n, dtype=int))

    @classmethod
    def zeros(cls, n_rows: int, n_cols: int = None) -> GaussianMatrix:
        n_cols = n_rows if n_cols is None else n_cols
        return cls.from_parts(np.zeros((n_rows, n_cols), dtype=int))

    @classmethod
    def from_complex(cls, A, denominator: int = 1) -> GaussianMatrix:
        """
        Exact copy of a complex matrix whose entries, scaled by
        `denominator`, are Gaussian integers.

        Raises
        ------
        `MatrixShapeError`
            If some scaled entry is not integral.
        """
        A = np.asarray(A, dtype=np.complex128) * denominator
        re = np.rint(A.real)
        im = np.rint(A.imag)
        if not (np.array_equal(re, A.real) and np.array_equal(im, A.imag)):
            raise MatrixShapeError(
                f"Entries are not Gaussian integers over the denominator {denominator}"
            )
        scale = Fraction(1, denominator)
        to_fraction = np.vectorize(lambda x: Fraction(int(x)) * scale, otypes=[object])
        return cls(to_fraction(re), to_fraction(im))

    @property
    def shape(self) -> tp.Tuple[int, int]:
        return self.re.shape

    @property
    def n(self) -> int:
        if self.shape[0] != self.shape[1]:
            raise MatrixShapeError(f"Matrix is not square: {self.shape}")
        return self.shape[0]

    def to_complex(self) -> np.ndarray:
        re = np.array(self.re, dtype=np.float64)
        im = np.array(self.im, dtype=np.float64)
        return re + 1j * im

    def __add__(self, other: GaussianMatrix) -> GaussianMatrix:
        return GaussianMatrix(self.re + other.re, self.im + other.im)

    def __sub__(self, other: GaussianMatrix) -> GaussianMatrix:
        return GaussianMatrix(self.re - other.re, self.im - other.im)

    def __neg__(self) -> GaussianMatrix:
        return GaussianMatrix(-self.re, -self.im)

    def __matmul__(self, other: GaussianMatrix) -> GaussianMatrix:
        if self.shape[1] != other.shape[0]:
            raise MatrixShapeError(f"Can't multiply {self.shape} by {other.shape}")
        re = self.re.dot(other.re) - self.im.dot(other.im)
        im = self.re.dot(other.im) + self.im.dot(other.re)
        return GaussianMatrix(re, im)

    def scale(self, re=0, im=0) -> GaussianMatrix:
        """
        Multiplies by the Gaussian rational re + i*im.
        """
        a, b = Fraction(re), Fraction(im)
        return GaussianMatrix(self.re * a - self.im * b, self.re * b + self.im * a)

    def times_i(self) -> GaussianMatrix:
        return self.scale(0, 1)

    def dagger(self) -> GaussianMatrix:
        return GaussianMatrix(self.re.T.copy(), (-self.im).T.copy())

    def transpose(self) -> GaussianMatrix:
        return GaussianMatrix(self.re.T.copy(), self.im.T.copy())

    def kron(self, other: GaussianMatrix) -> GaussianMatrix:
        re = np.kron(self.re, other.re) - np.kron(self.im, other.im)
        im = np.kron(self.re, other.im) + np.kron(self.im, other.re)
        return GaussianMatrix(re, im)

    def is_zero(self) -> bool:
        return all(x == 0 for x in self.re.flat) and all(x == 0 for x in self.im.flat)

    def equals(self, other: GaussianMatrix) -> bool:
        return self.shape == other.shape and (self - other).is_zero()

    def is_real(self) -> bool:
        return all(x == 0 for x in self.im.flat)

    def is_hermitian(self) -> bool:
        return self.equals(self.dagger())

    def is_skew_hermitian(self) -> bool:
        return (self + self.dagger()).is_zero()

    def is_symmetric(self) -> bool:
        return self.equals(self.transpose())

    def is_skew_symmetric(self) -> bool:
        return (self + self.transpose()).is_zero()

    def square_is_scalar(self, re=0, im=0) -> bool:
        """
        True if self @ self == (re + i*im) * I.
        """
        return (self @ self).equals(GaussianMatrix.identity(self.n).scale(re, im))

    def is_unitary(self) -> bool:
        return (self @ self.dagger()).equals(GaussianMatrix.identity(self.n))

    def determinant(self) -> tp.Tuple[Fraction, Fraction]:
        """
        Exact determinant (real, imaginary) by Gaussian elimination over Q(i).
        """
        n = self.n
        rows = [[(self.re[r, c], self.im[r, c]) for c in range(n)] for r in range(n)]
        det = (Fraction(1), Fraction(0))
        for col in range(n):
            pivot = next((r for r in range(col, n) if rows[r][col] != (0, 0)), None)
            if pivot is None:
                return Fraction(0), Fraction(0)
            if pivot != col:
                rows[col], rows[pivot] = rows[pivot], rows[col]
                det = (-det[0], -det[1])
            pr, pi = rows[col][col]
            det = (det[0] * pr - det[1] * pi, det[0] * pi + det[1] * pr)
            norm = pr * pr + pi * pi
            inv = (pr / norm, -pi / norm)
            for r in range(col + 1, n):
                fr, fi = rows[r][col]
                if (fr, fi) == (0, 0):
                    continue
                factor = (fr * inv[0] - fi * inv[1], fr * inv[1] + fi * inv[0])
                for c in range(col, n):
                    xr, xi = rows[col][c]
                    yr, yi = rows[r][c]
                    rows[r][c] = (
                        yr - (factor[0] * xr - factor[1] * xi),
                        yi - (factor[0] * xi + factor[1] * xr),
                    )
        return det

    def is_invertible(self) -> bool:
        return self.determinant() != (0, 0)

    def inverse(self) -> GaussianMatrix:
        """
        Exact inverse by Gauss-Jordan elimination over Q(i).

        Raises
        ------
        `MatrixShapeError`
            If the matrix is singular.
        """
        n = self.n
        zero, one = Fraction(0), Fraction(1)
        rows = [
            [complex_pair for complex_pair in zip(self.re[r], self.im[r])]
            + [(one if c == r else zero, zero) for c in range(n)]
            for r in range(n)
        ]

        def mul(x, y):
            return (x[0] * y[0] - x[1] * y[1], x[0] * y[1] + x[1] * y[0])

        for col in range(n):
            pivot = next((r for r in range(col, n) if rows[r][col] != (0, 0)), None)
            if pivot is None:
                raise MatrixShapeError("Matrix is singular")
            rows[col], rows[pivot] = rows[pivot], rows[col]
            pr, pi = rows[col][col]
            norm = pr * pr + pi * pi
            inv = (pr / norm, -pi / norm)
            rows[col] = [mul(inv, x) for x in rows[col]]
            for r in range(n):
                if r == col or rows[r][col] == (0, 0):
                    continue
                factor = rows[r][col]
                rows[r] = [
                    (y[0] - p[0], y[1] - p[1])
                    for y, p in zip(rows[r], (mul(factor, x) for x in rows[col]))
                ]
        re = np.array([[x[0] for x in row[n:]] for row in rows], dtype=object)
        im = np.array([[x[1] for x in row[n:]] for row in rows], dtype=object)
        return GaussianMatrix(re, im)

    def __repr__(self):
        return f"<GaussianMatrix {self.shape[0]}x{self.shape[1]}>"


def kron_all(factors: tp.Sequence[GaussianMatrix], identity_size: int = 1) -> GaussianMatrix:
    """
    Exact Kronecker product; the empty product is the identity.
    """
    if not factors:
        return GaussianMatrix.identity(identity_size)
    return functools.reduce(lambda a, b: a.kron(b), factors)


def matmul_all(factors: tp.Sequence[GaussianMatrix], identity_size: int = 1) -> GaussianMatrix:
    if not factors:
        return GaussianMatrix.identity(identity_size)
    return functools.reduce(lambda a, b: a @ b, factors)


def exact_anticommute(A: GaussianMatrix, B: GaussianMatrix) -> bool:
    return (A @ B + B @ A).is_zero()


def exact_mutually_orthogonal(A: GaussianMatrix, B: GaussianMatrix) -> bool:
    """
    A B* + B A* == 0, exactly.
    """
    return (A @ B.dagger() + B @ A.dagger()).is_zero()
