"""Error types shared across the package.

Domain errors signal invalid mathematical input (mismatched ambient spaces,
malformed distance tables, out-of-range parameters).  Resource errors signal
requests that exceed configured enumeration or grid limits; they carry the
achievable maximum so callers can retry with a smaller request.
"""


class DomainError(ValueError):
    """Raised when an input is mathematically invalid for the operation."""


class ResourceError(RuntimeError):
    """Raised when a request exceeds a configured resource limit.

    Attributes:
        achievable: the largest value of the limiting parameter that the
            implementation can honour, when known.
    """

    def __init__(self, message, achievable=None):
        super().__init__(message)
        self.achievable = achievable
