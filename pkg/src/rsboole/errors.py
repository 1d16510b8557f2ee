"""Exception hierarchy shared by every module.

The CLI maps these onto exit codes: InvalidArgument -> 2, ResourceLimit -> 3,
InconsistencyError -> 4.
"""


class RsbooleError(Exception):
    pass


class InvalidArgument(RsbooleError, ValueError):
    pass


class ResourceLimit(RsbooleError):
    def __init__(self, cap, value, limit):
        self.cap = cap
        self.value = value
        self.limit = limit
        super().__init__(f"{cap}: {value} exceeds limit {limit}")


class Unsupported(RsbooleError):
    pass


class NotPlateaued(RsbooleError):
    pass


class SignUndetermined(RsbooleError):
    """Raised when the sign of an unbalanced weight cannot be resolved."""

    def __init__(self, candidates):
        self.candidates = tuple(candidates)
        super().__init__(f"weight sign undetermined; candidates {self.candidates}")


class InconsistencyError(RsbooleError):
    """Two independent computations of the same quantity disagree."""
