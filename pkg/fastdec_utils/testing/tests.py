import logging
import os
import unittest

from fastdec_utils.testing.helpers import assert_matrix_close, assert_table_equal


class BaseTest(unittest.TestCase):
    """
    Base class of the package tests. Loads a `.env` file
    from the working directory when there is one.
    """

    @classmethod
    def setUpClass(cls):
        if os.path.exists(".env"):
            try:
                from dotenv import load_dotenv
            except ModuleNotFoundError:
                logging.warning("'.env' file was found but module python-dotenv is not installed.")
            else:
                try:
                    load_dotenv(".env")
                except Exception:
                    logging.error("Error loading '.env' file:")
                    logging.debug("dotenv error stack:", exc_info=True)

    def assertTableEqual(self, a, b, sort_by=None, atol=0.0):
        """
        Checks if two report tables hold the same rows,
        ordered by the `sort_by` key columns.
        """
        try:
            assert_table_equal(a, b, sort_by=sort_by, atol=atol)
        except AssertionError as e:
            raise self.failureException(f"Tables are not equal: {e}") from e

    def assertMatrixClose(self, a, b, atol=1e-9, up_to_sign=False):
        """
        Checks if two complex matrices agree entrywise within `atol`.
        """
        try:
            assert_matrix_close(a, b, atol=atol, up_to_sign=up_to_sign)
        except AssertionError as e:
            raise self.failureException(str(e)) from e
