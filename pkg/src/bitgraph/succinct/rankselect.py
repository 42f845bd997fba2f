"""Rank-select over a static bit sequence.

The payload is kept packed in 64-bit words.  A per-word prefix-sum
directory gives constant-time rank; select binary-searches the directory
and finishes inside one word, so it costs O(log n) rather than the
constant time of the textbook construction.  That trade keeps the code
small while preserving the O(n)-bit footprint, which is what the rest of
the package depends on.
"""

from __future__ import annotations

from typing import Iterable, Optional

import numpy as np

from ..ledger import SpaceLedger


class RankSelect:
    """rank/select queries over an immutable bit sequence b_1..b_n."""

    def __init__(self, bits: Iterable[int] | np.ndarray,
                 ledger: Optional[SpaceLedger] = None, tag: str = "rankselect"):
        b = np.asarray(bits if not isinstance(bits, (list, tuple)) else list(bits),
                       dtype=np.uint8)
        if b.ndim != 1:
            raise ValueError("bit sequence must be one-dimensional")
        if b.size and b.max(initial=0) > 1:
            raise ValueError("bit sequence may only contain 0 and 1")
        self.n = int(b.size)
        nwords = max(1, -(-self.n // 64))
        packed = np.packbits(b, bitorder="little")
        packed = np.pad(packed, (0, nwords * 8 - packed.size))
        self._words = packed.view(np.uint64)
        # cumulative popcount up to and including each word
        self._cum = np.cumsum(np.bitwise_count(self._words).astype(np.int64))
        self.ones = int(self._cum[-1]) if self.n else 0

        self._ledger = ledger
        self._tag = tag
        # payload + 64-bit prefix entry per word
        self.bits_registered = self.n + 64 * nwords
        if ledger is not None:
            ledger.register(tag, self.bits_registered)

    def rank(self, j: int) -> int:
        """Number of 1-bits among b_1..b_j (j in 0..n)."""
        if not 0 <= j <= self.n:
            raise ValueError(f"rank index {j} out of range 0..{self.n}")
        if j == 0:
            return 0
        w, r = divmod(j, 64)
        total = int(self._cum[w - 1]) if w else 0
        if r:
            total += (int(self._words[w]) & ((1 << r) - 1)).bit_count()
        return total

    def select(self, k: int) -> int:
        """Smallest j with rank(j) == k (k in 1..ones); positions are 1-based."""
        if not 1 <= k <= self.ones:
            raise ValueError(f"select index {k} out of range 1..{self.ones}")
        w = int(np.searchsorted(self._cum, k, side="left"))
        rem = k - (int(self._cum[w - 1]) if w else 0)
        word = int(self._words[w])
        pos = 0
        while True:
            low = word & -word
            rem -= 1
            if rem == 0:
                pos = low.bit_length() - 1
                break
            word ^= low
        return w * 64 + pos + 1

    def release(self) -> None:
        if self._ledger is not None:
            self._ledger.release(self._tag, self.bits_registered)
            self._ledger = None


def build_rank_select(bits, ledger: Optional[SpaceLedger] = None,
                      tag: str = "rankselect") -> RankSelect:
    return RankSelect(bits, ledger=ledger, tag=tag)
