"""Exception types and the global dimension cap."""

import os


class UsageError(ValueError):
    """Caller passed arguments outside an operation's contract."""


class PreconditionError(ValueError):
    """Input is well-formed but violates an operation's mathematical precondition."""


class VerificationError(AssertionError):
    """A checked mathematical statement failed; carries a witness when available."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


DEFAULT_DIMENSION_CAP = 24

_cap = int(os.environ.get("XORCC_DIMENSION_CAP", DEFAULT_DIMENSION_CAP))


def dimension_cap() -> int:
    return _cap


def set_dimension_cap(cap: int) -> None:
    """Raise (or lower) the cap on n for operations that materialise 2^n-bit masks."""
    global _cap
    if cap < 1:
        raise UsageError(f"dimension cap must be positive, got {cap}")
    _cap = int(cap)


def check_dimension(n: int, cap: int = None) -> int:
    limit = dimension_cap() if cap is None else cap
    if not isinstance(n, int) or isinstance(n, bool):
        raise UsageError(f"dimension must be an int, got {type(n).__name__}")
    if n < 0 or n > limit:
        raise UsageError(f"dimension n={n} outside [0, {limit}]")
    return n
