"""Shared exception types."""


class PrecisionError(ArithmeticError):
    """Requested precision is unreachable within the configured budget."""


class CacheIOError(OSError):
    """Cache file could not be read or written (distinct from a miss)."""
