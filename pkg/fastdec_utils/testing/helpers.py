import numpy as np
import pandas.testing as pd_testing


def assert_table_equal(a, b, sort_by=None, atol=0.0):
    """
    Checks that two report tables (bound tables, trial rows, check
    frames) hold the same rows under the same columns.

    Parameters
    ----------
    `a`: pd.DataFrame
        First table.
    `b`: pd.DataFrame
        Second table.
    `sort_by`: str or list of str, optional
        Key columns. Both tables are ordered by them and reindexed before
        the comparison, so tables assembled in another order (by several
        workers, or by slicing a larger table) compare equal.
    `atol`: float, default 0.0
        Absolute tolerance of the floating columns; 0.0 compares exactly.

    Raises
    ------
    `AssertionError`
    """
    if list(a.columns) != list(b.columns):
        raise AssertionError(f"Columns differ: {list(a.columns)} != {list(b.columns)}")
    if sort_by is not None:
        a = a.sort_values(sort_by, kind="mergesort").reset_index(drop=True)
        b = b.sort_values(sort_by, kind="mergesort").reset_index(drop=True)
    if atol > 0.0:
        pd_testing.assert_frame_equal(a, b, check_exact=False, rtol=0.0, atol=atol)
    else:
        pd_testing.assert_frame_equal(a, b, check_exact=True)


def assert_matrix_close(a, b, rtol=0.0, atol=1e-9, up_to_sign=False):
    """
    Checks that two complex matrices agree entrywise.

    Parameters
    ----------
    `up_to_sign`: bool, default False
        Also accept b == -a.

    Raises
    ------
    `AssertionError`
    """
    a = np.asarray(a, dtype=np.complex128)
    b = np.asarray(b, dtype=np.complex128)
    if a.shape != b.shape:
        raise AssertionError(f"Shapes differ: {a.shape} != {b.shape}")
    if np.allclose(a, b, rtol=rtol, atol=atol):
        return
    if up_to_sign and np.allclose(a, -b, rtol=rtol, atol=atol):
        return
    gap = float(np.max(np.abs(a - b)))
    raise AssertionError(f"Matrices differ by up to {gap:.3e}:\n{a}\n{b}")
