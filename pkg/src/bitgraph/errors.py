"""Exception types shared across the package."""

from __future__ import annotations


class BitgraphError(Exception):
    """Base class for all package-specific errors."""


class GraphFormatError(BitgraphError):
    """Raised when an edge-list input cannot be turned into a valid graph."""

    def __init__(self, reason: str, line: int | None = None):
        self.reason = reason
        self.line = line
        where = f" (line {line})" if line is not None else ""
        super().__init__(f"{reason}{where}")


class MalformedInputError(GraphFormatError):
    pass


class SelfLoopError(GraphFormatError):
    pass


class DuplicateEdgeError(GraphFormatError):
    pass


class IdOutOfRangeError(GraphFormatError):
    pass


class LedgerError(BitgraphError):
    """Raised when bit accounting is violated (e.g. releasing unregistered bits)."""


class CapacityError(BitgraphError):
    """Raised when a fixed-capacity structure would overflow."""
