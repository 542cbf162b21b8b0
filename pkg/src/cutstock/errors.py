class CutstockError(Exception):
    """Base class for errors raised by this package."""


class InvalidInstance(CutstockError, ValueError):
    pass


class CeilingExceeded(CutstockError):
    """A state space or multiset family is larger than the configured ceiling."""

    def __init__(self, what: str, count: int, ceiling: int):
        self.what = what
        self.count = count
        self.ceiling = ceiling
        super().__init__(
            f"state-space too large: {what} needs {count} > ceiling {ceiling}"
        )


class UnreachableTarget(CutstockError):
    """The demand vector cannot be reached under the current search limits.

    This is a statement about the restricted search (radius, group size,
    configuration source), never about feasibility of the instance itself.
    """

    def __init__(self, message: str, radius=None):
        self.radius = radius
        super().__init__(message)
