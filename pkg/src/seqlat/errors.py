"""Exception and warning types shared across the package."""


class SeqlatError(Exception):
    """Base class for all library errors."""


class InvalidSpecError(SeqlatError):
    """A space/function specification is malformed or out of range."""


class DomainOverflowError(SeqlatError):
    """An argument lies outside the representable range of a tabulated function."""


class DivergenceError(SeqlatError):
    """A supremum exceeded its configured cap (argument outside effective domain)."""


class UnsupportedHostError(SeqlatError):
    """The requested operation does not support this host lattice."""


class UnsupportedCoupleError(SeqlatError):
    """The requested couple is outside the supported families."""


class CapExceededError(SeqlatError):
    """A dimension or search cap was exceeded."""


class Delta2ViolationError(SeqlatError):
    """The doubling constant exceeded its cap where a finite one is required."""


class MajorizationError(SeqlatError):
    """Partial-sum majorization fails; carries the first violating index."""

    def __init__(self, k: int, lhs: float, rhs: float):
        self.k = k
        self.lhs = lhs
        self.rhs = rhs
        super().__init__(
            f"partial-sum majorization fails at k={k}: {lhs:.6g} > {rhs:.6g}"
        )


class TruncationWarning(UserWarning):
    """A truncated supremum attained its maximum at the window edge."""
