"""Exception types shared across the package."""


class ZhangmapError(Exception):
    """Base class for all package errors."""


class InvalidInput(ZhangmapError, ValueError):
    """A precondition on user-supplied arguments was violated."""


class CapExceeded(ZhangmapError, ValueError):
    """A resource cap (sieve size, scan limit) was exceeded; the operation refuses to degrade."""


class PoleAtZero(ZhangmapError, ZeroDivisionError):
    """spow(0, p) with p < 0."""


class DomainError(ZhangmapError, ArithmeticError):
    """A map was evaluated outside its domain.

    ``reason`` is one of ``"non_positive"``, ``"log_singularity"``, ``"overflow"``.
    """

    NON_POSITIVE = "non_positive"
    LOG_SINGULARITY = "log_singularity"
    OVERFLOW = "overflow"

    def __init__(self, reason: str, x: float):
        self.reason = reason
        self.x = x
        super().__init__(f"map domain violation ({reason}) at x={x!r}")
