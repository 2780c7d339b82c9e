"""Exception hierarchy shared across the package.

The CLI maps these onto exit codes: DataError -> 2, InfeasibleError -> 3.
"""


class FavdError(Exception):
    """Base class for all favd-specific failures."""


class DataError(FavdError):
    """Input data is missing, malformed, or unusable."""


class InfeasibleError(FavdError):
    """A requested protocol cannot be carried out on the given data."""
