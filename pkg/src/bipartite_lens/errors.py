"""Exception types shared across the package."""


class BipartiteLensError(Exception):
    """Base class for all package-specific errors."""


class ModeViolationError(BipartiteLensError):
    """An edge was given two endpoints of the same mode."""


class UnknownNodeError(BipartiteLensError):
    """A node reference is not registered in the graph."""


class CountOverflowError(BipartiteLensError):
    """A census count exceeded the 64-bit unsigned range."""


class TooLargeError(BipartiteLensError):
    """Graph exceeds the size cap of the brute-force oracle."""


class InsufficientDataError(BipartiteLensError):
    """Too few tail observations for a power-law fit."""


class UnreadableInputError(BipartiteLensError):
    """Stream-level input failure (not a per-row format violation)."""


class WindowOutOfRangeError(BipartiteLensError):
    """Requested window lies outside the store's year range."""


class EmptyStoreError(BipartiteLensError):
    """The timed edge store holds no projects."""


class ShiftOutsideRangeError(BipartiteLensError):
    """Regime-shift year falls outside the configured year range."""
