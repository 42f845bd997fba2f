"""Choice dictionary: a subset of {1..n} with O(1)-ish ops and deterministic choice.

Layout is a 64-ary bitmap trie: leaf words hold membership bits and each
summary level holds one bit per word below.  All operations touch at most
ceil(log64 n) words (at most 4 levels for any universe this package ever
builds), and choice() returns the minimum member so that every traversal
driven by it is reproducible.  Words live in dictionaries keyed by word
index, so construction and clear() are O(1) and only touched memory is
ever materialised; the registered footprint is the full bitmap layout.
"""

from __future__ import annotations

from typing import Iterator, Optional

from ..ledger import SpaceLedger


class ChoiceDictionary:
    def __init__(self, n: int, ledger: Optional[SpaceLedger] = None,
                 tag: str = "choicedict"):
        if n < 0:
            raise ValueError("universe size must be non-negative")
        self.n = n
        sizes = []
        s = max(1, n)
        while True:
            s = -(-s // 64)
            sizes.append(s)
            if s == 1:
                break
        self._levels: list[dict[int, int]] = [{} for _ in sizes]
        self._size = 0

        self._ledger = ledger
        self._tag = tag
        self.bits_registered = n + sum(sizes)
        if ledger is not None:
            ledger.register(tag, self.bits_registered)

    def _check(self, x: int) -> None:
        if not 1 <= x <= self.n:
            raise ValueError(f"{x} outside universe 1..{self.n}")

    def __len__(self) -> int:
        return self._size

    def __contains__(self, x: int) -> bool:
        self._check(x)
        idx = x - 1
        return bool(self._levels[0].get(idx >> 6, 0) >> (idx & 63) & 1)

    contains = __contains__

    def insert(self, x: int) -> None:
        self._check(x)
        idx = x - 1
        for level in self._levels:
            w, b = idx >> 6, idx & 63
            word = level.get(w, 0)
            if word >> b & 1:
                return
            level[w] = word | (1 << b)
            if word:
                break
            idx = w
        else:
            pass
        self._size += 1

    def delete(self, x: int) -> None:
        self._check(x)
        idx = x - 1
        if not (self._levels[0].get(idx >> 6, 0) >> (idx & 63) & 1):
            raise KeyError(x)
        for level in self._levels:
            w, b = idx >> 6, idx & 63
            word = level[w] & ~(1 << b)
            level[w] = word
            if word:
                break
            idx = w
        self._size -= 1

    def discard(self, x: int) -> None:
        self._check(x)
        idx = x - 1
        if self._levels[0].get(idx >> 6, 0) >> (idx & 63) & 1:
            self.delete(x)

    def choice(self) -> Optional[int]:
        """Minimum member, or None when empty."""
        if self._size == 0:
            return None
        wi = 0
        for level in reversed(self._levels):
            word = level[wi]
            wi = wi * 64 + ((word & -word).bit_length() - 1)
        return wi + 1

    def iterate(self) -> Iterator[int]:
        """All members in ascending order."""
        yield from self._walk(len(self._levels) - 1, 0)

    __iter__ = iterate

    def _walk(self, li: int, wi: int) -> Iterator[int]:
        word = self._levels[li].get(wi, 0)
        while word:
            low = word & -word
            b = low.bit_length() - 1
            if li == 0:
                yield wi * 64 + b + 1
            else:
                yield from self._walk(li - 1, wi * 64 + b)
            word ^= low

    def clear(self) -> None:
        self._levels = [{} for _ in self._levels]
        self._size = 0

    def release(self) -> None:
        if self._ledger is not None:
            self._ledger.release(self._tag, self.bits_registered)
            self._ledger = None
