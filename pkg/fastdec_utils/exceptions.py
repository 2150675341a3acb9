"""
Provides custom exceptions for the fast-decodability toolkit.
"""


class FastDecError(Exception):
    """
    Raised on generic analysis errors.
    """

    def __init__(self, message, parent_error=None, *args, **kwargs):
        if parent_error is not None:
            message += f": '{str(parent_error).capitalize()}'"
        self.__message = message
        self.parent = parent_error
        super().__init__(*args, **kwargs)

    def __str__(self):
        return self.message

    @property
    def message(self):
        """gets the message value"""
        return self.__message

    @message.setter
    def message(self, value):
        self.__message = value


class MatrixShapeError(FastDecError):
    """
    Raised when a matrix is not square, sizes do not
    match or entries are not finite.
    """

    pass


class CodeBasisError(FastDecError):
    """
    Raised when a code basis violates one of its invariants.
    The 1-based position of the offending matrix is kept in `index`,
    or None when the violation involves the whole family.
    """

    def __init__(self, message, index=None, parent_error=None, *args, **kwargs):
        self.index = index
        super().__init__(message, parent_error, *args, **kwargs)


class CodeFormatError(FastDecError):
    """
    Raised when a JSON document can't be decoded into
    a matrix, a code basis or a partition.
    """

    pass


class PartitionError(FastDecError):
    """
    Raised when a group partition doesn't cover the columns
    or puts a conflicting pair in distinct groups.
    """

    pass


class VerificationError(FastDecError):
    """
    Raised when a post-condition check fails.
    """

    pass


class LatticeRankError(FastDecError):
    """
    Raised when the lattice matrix is rank deficient.
    """

    pass


class ChannelSamplingError(FastDecError):
    """
    Raised when no usable channel could be drawn.
    """

    pass


class SearchLimitError(FastDecError):
    """
    Raised when an exhaustive search exceeds the configured cap.
    """

    def __init__(self, message, size=None, cap=None, *args, **kwargs):
        self.size = size
        self.cap = cap
        super().__init__(message, None, *args, **kwargs)


class ConstructionError(FastDecError):
    """
    Raised when a matrix family construction is requested
    with parameters it can't satisfy.
    """

    pass
