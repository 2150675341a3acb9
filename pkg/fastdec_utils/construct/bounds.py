"""
Upper bounds on anticommuting families and on the number of
mutually orthogonal groups.
"""
from __future__ import annotations

import typing as tp
from dataclasses import asdict, dataclass

import pandas as pd

from fastdec_utils.exceptions import ConstructionError


def nu2(m: int) -> int:
    """
    2-adic valuation: the largest t with 2^t dividing m.

    Example:
    --------
        >>> nu2(12)
        2
    """
    if m < 1:
        raise ValueError(f"nu2 needs a positive integer, got {m}")
    return (m & -m).bit_length() - 1


@dataclass(frozen=True)
class AlgebraParams:
    """
    Degree and index of the central simple algebra the basis matrices
    are taken from. Trusted input: the index is never computed here.
    """

    deg: int
    ind: int = 1
    division: bool = False

    def __post_init__(self):
        if self.deg < 1 or self.ind < 1:
            raise ConstructionError(f"Degree and index must be positive, got deg={self.deg}, ind={self.ind}")
        if self.deg % self.ind:
            raise ConstructionError(f"The index {self.ind} must divide the degree {self.deg}")
        if self.division and self.ind != self.deg:
            raise ConstructionError("A division algebra has index equal to its degree")

    @classmethod
    def division_algebra(cls, deg: int) -> AlgebraParams:
        return cls(deg=deg, ind=deg, division=True)

    @property
    def nu(self) -> int:
        """nu2(deg / ind)"""
        return nu2(self.deg // self.ind)


def anticommute_bound(params: AlgebraParams, parity: str) -> int:
    """
    Largest size r of a pairwise anticommuting family of invertible
    elements: 2 nu2(deg/ind) + 2 when r is even, + 3 when r is odd.
    """
    if parity not in ("even", "odd"):
        raise ValueError(f"Parity must be 'even' or 'odd', got '{parity}'")
    return 2 * params.nu + (2 if parity == "even" else 3)


def hre_bound(n: int) -> int:
    """
    Most n x n unitary, square -I, pairwise anticommuting matrices: 2 nu2(n) + 1.
    """
    return 2 * nu2(n) + 1


@dataclass(frozen=True)
class BoundReport:
    """
    Bounds for n x n codes. A family of g mutually orthogonal matrices
    normalizes to g-1 anticommuting ones, so g_odd = r_even + 1 and
    g_even = r_odd + 1.
    """

    n: int
    context: str
    r_even: int
    r_odd: int
    g_even: int
    g_odd: int
    g_general_n: int
    g_max: int
    hre: int

    def to_dict(self) -> tp.Dict[str, tp.Any]:
        return asdict(self)


def mo_group_bound(n: int, params: AlgebraParams = None) -> BoundReport:
    """
    Bounds on the number of groups g of a fast decodable n x n code.

    Parameters
    ----------
    `n`: int
        Matrix size.
    `params`: AlgebraParams
        Algebra the basis comes from. Without it the bounds are those
        of M_n(C), degree n and index 1.
    """
    if n < 1:
        raise ValueError(f"Matrix size must be positive, got {n}")
    algebra = params if params is not None else AlgebraParams(deg=n, ind=1)
    r_even = anticommute_bound(algebra, "even")
    r_odd = anticommute_bound(algebra, "odd")
    g_general = min(n * n, 2 * nu2(n) + 4)
    g_max = g_general
    if params is not None:
        g_max = min(g_max, 2 * params.nu + 4)
        context = f"deg={params.deg}, ind={params.ind}" + (", division" if params.division else "")
    else:
        context = f"M_{n}(C)"
    if algebra.division:
        g_max = min(g_max, 4)
    return BoundReport(
        n=n,
        context=context,
        r_even=r_even,
        r_odd=r_odd,
        g_even=r_odd + 1,
        g_odd=r_even + 1,
        g_general_n=g_general,
        g_max=g_max,
        hre=hre_bound(n),
    )


def bounds_table(n_max: int, division: bool = False) -> pd.DataFrame:
    """
    BoundReport rows for n = 1..n_max; with `division` every row
    assumes a division algebra of degree n.
    """
    rows = []
    for n in range(1, n_max + 1):
        params = AlgebraParams.division_algebra(n) if division else None
        row = mo_group_bound(n, params).to_dict()
        row["nu2"] = nu2(n)
        rows.append(row)
    columns = ["n", "nu2", "context", "r_even", "r_odd", "g_even", "g_odd", "g_general_n", "g_max", "hre"]
    return pd.DataFrame(rows, columns=columns)
