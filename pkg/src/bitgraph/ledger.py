"""Working-memory bit accounting.

Every data structure in this package that counts towards an algorithm's
working space registers its footprint here when it is built and releases
it when it is torn down.  The ledger tracks the current total and the peak
over the whole run, broken down by a caller-chosen tag, which is what the
scaling checks in the acceptance suite assert against.

Footprints are the logical bit widths of the declared layouts (a 2-bit
colour per vertex registers 2n bits even though the interpreter stores it
in a byte array).  The read-only input graph is never registered.
"""

from __future__ import annotations

from .errors import LedgerError


class SpaceLedger:
    """Registry of live working bits with peak tracking."""

    def __init__(self) -> None:
        self._by_tag: dict[str, int] = {}
        self._live = 0
        self._peak = 0

    def register(self, tag: str, bits: int) -> None:
        if bits < 0:
            raise LedgerError(f"cannot register negative bits ({bits}) for {tag!r}")
        self._by_tag[tag] = self._by_tag.get(tag, 0) + bits
        self._live += bits
        if self._live > self._peak:
            self._peak = self._live

    def release(self, tag: str, bits: int) -> None:
        held = self._by_tag.get(tag, 0)
        if bits < 0 or bits > held:
            raise LedgerError(f"release of {bits} bits exceeds {held} registered for {tag!r}")
        if bits == held:
            del self._by_tag[tag]
        else:
            self._by_tag[tag] = held - bits
        self._live -= bits

    @property
    def live(self) -> int:
        return self._live

    def peak(self) -> int:
        return self._peak

    def breakdown(self) -> dict[str, int]:
        return dict(self._by_tag)

    def report(self) -> dict[str, object]:
        return {"live": self._live, "peak": self._peak, "breakdown": self.breakdown()}
