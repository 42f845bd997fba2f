"""Static space allocation: locate variable-width records in one bit array.

Records of widths d_1..d_n are laid out back to back.  A marker bit vector
of length n + N carries a 1 at position s_k = k + sum(d_j for j < k); the
start of record k is then select(k) - k, answered by the rank-select
structure over the marker.
"""

from __future__ import annotations

from typing import Optional, Sequence

import numpy as np

from ..ledger import SpaceLedger
from .rankselect import RankSelect


class StaticAllocationIndex:
    def __init__(self, sizes: Sequence[int] | np.ndarray,
                 ledger: Optional[SpaceLedger] = None, tag: str = "staticalloc"):
        d = np.asarray(list(sizes) if not isinstance(sizes, np.ndarray) else sizes,
                       dtype=np.int64)
        if d.size and d.min(initial=0) < 0:
            raise ValueError("record sizes must be non-negative")
        self.count = int(d.size)
        self.total = int(d.sum())
        marker = np.zeros(self.count + self.total, dtype=np.uint8)
        if self.count:
            starts = np.arange(1, self.count + 1) + np.concatenate(([0], np.cumsum(d[:-1])))
            marker[starts - 1] = 1
        self.marker = RankSelect(marker, ledger=ledger, tag=tag)
        self._sizes = d

    def locate(self, k: int) -> int:
        """Bit offset of record k (1-based): select(k) - k."""
        if not 1 <= k <= self.count:
            raise ValueError(f"record index {k} out of range 1..{self.count}")
        return self.marker.select(k) - k

    def record_size(self, k: int) -> int:
        if not 1 <= k <= self.count:
            raise ValueError(f"record index {k} out of range 1..{self.count}")
        return int(self._sizes[k - 1])

    @property
    def bits_registered(self) -> int:
        return self.marker.bits_registered

    def release(self) -> None:
        self.marker.release()


def build_static_allocation(sizes, ledger: Optional[SpaceLedger] = None,
                            tag: str = "staticalloc") -> StaticAllocationIndex:
    return StaticAllocationIndex(sizes, ledger=ledger, tag=tag)
