"""Shared exception types."""


class ResourceLimitError(RuntimeError):
    """Raised when an enumeration or scan would exceed its work budget.

    Kept distinct from ValueError so callers (and the CLI) can map guard
    trips to their own exit path instead of treating them as bad input.
    """
