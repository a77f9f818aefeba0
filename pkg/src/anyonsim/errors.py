"""Exception hierarchy shared by all modules.

The CLI maps these onto process exit codes: configuration problems exit
with 2, numeric/size problems with 3, and comparison mismatches with 4.
"""

__all__ = [
    "AnyonsimError",
    "InvalidDimensionError",
    "InvalidIndexError",
    "InvalidArgumentError",
    "DuplicateInputError",
    "InvalidPermutationError",
    "SizeLimitError",
    "InvalidDistributionError",
    "DegenerateDistributionError",
    "ConfigError",
    "ComparisonError",
]


class AnyonsimError(Exception):
    """Base class for all errors raised by this package."""


class InvalidDimensionError(AnyonsimError):
    """A matrix or register does not have the required shape."""


class InvalidIndexError(AnyonsimError):
    """A mode, row or column index is out of range."""


class InvalidArgumentError(AnyonsimError):
    """An argument violates a documented precondition."""


class DuplicateInputError(AnyonsimError):
    """Input mode tuples must consist of distinct modes."""


class InvalidPermutationError(AnyonsimError):
    """A sequence is not a bijection on 0..N-1."""


class SizeLimitError(AnyonsimError):
    """A combinatorial size cap (factorial or exponential) was exceeded."""


class InvalidDistributionError(AnyonsimError):
    """A distribution contains negative entries."""


class DegenerateDistributionError(AnyonsimError):
    """A distribution has no mass on the compared index set."""


class ConfigError(AnyonsimError):
    """A configuration document is malformed.

    ``path`` holds the dotted location of the offending field when known.
    """

    def __init__(self, message, path=None):
        self.path = path
        super().__init__(f"{path}: {message}" if path else message)


class ComparisonError(AnyonsimError):
    """Two result files cannot be compared (index sets differ)."""
