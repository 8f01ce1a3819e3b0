"""Exception types shared across the package.

The CLI maps the value-type errors to exit code 2 and
:class:`ResourceError` to exit code 3.
"""


class TakagiError(Exception):
    """Base class for all package errors."""


class DomainError(TakagiError, ValueError):
    """An argument lies outside the domain of the operation."""


class StructuralError(TakagiError, ValueError):
    """A word does not have the required shape (balanced, leading, ...)."""


class PreconditionError(TakagiError, ValueError):
    """A documented precondition of a construction is not met."""


class ResourceError(TakagiError, RuntimeError):
    """An enumeration or search would exceed its configured cap."""

    def __init__(self, what: str, needed: int, cap: int):
        self.what = what
        self.needed = needed
        self.cap = cap
        super().__init__(f"{what}: {needed} exceeds cap {cap} (set TAKAGI_CAP to override)")
