"""Ragged dictionary: up to kappa keys from {1..n}, each with a fixed-width
satellite value, in O(n) bits.

The key range is cut into buckets of ceil(log2 n) keys and each bucket owns
a small AVL tree, so every operation touches O(log log n) nodes.  Nodes are
fixed-width records in a preallocated arena of kappa slots; free slots are
handed out by a choice dictionary, and membership is a plain bit vector.
"""

from __future__ import annotations

import math
from typing import Optional

from ..errors import CapacityError
from ..ledger import SpaceLedger
from .choicedict import ChoiceDictionary

_NIL = 0  # arena slots are 1-based; 0 is the null child


class RaggedDictionary:
    def __init__(self, n: int, satellite_bits: int, capacity: int,
                 ledger: Optional[SpaceLedger] = None, tag: str = "raggeddict"):
        if n < 1:
            raise ValueError("universe size must be positive")
        if satellite_bits < 0 or capacity < 1:
            raise ValueError("bad satellite width or capacity")
        self.n = n
        self.satellite_bits = satellite_bits
        self.capacity = capacity
        self.bucket_width = max(1, math.ceil(math.log2(n)) if n > 1 else 1)
        nbuckets = -(-n // self.bucket_width)
        self._roots = [_NIL] * nbuckets
        self._key = [0] * (capacity + 1)
        self._sat = [0] * (capacity + 1)
        self._left = [_NIL] * (capacity + 1)
        self._right = [_NIL] * (capacity + 1)
        self._height = [0] * (capacity + 1)
        self._member = bytearray(n + 1)
        self._size = 0

        self._ledger = ledger
        self._tag = tag
        self._free = ChoiceDictionary(capacity, ledger=ledger, tag=tag + ".freelist")
        for slot in range(1, capacity + 1):
            self._free.insert(slot)
        keyw = max(1, (n).bit_length())
        ptrw = max(1, (capacity + 1).bit_length())
        record = keyw + satellite_bits + 2 * ptrw + 3  # key, satellite, children, height
        self.bits_registered = n + nbuckets * ptrw + capacity * record
        if ledger is not None:
            ledger.register(tag, self.bits_registered)

    def __len__(self) -> int:
        return self._size

    def _check(self, key: int) -> None:
        if not 1 <= key <= self.n:
            raise ValueError(f"key {key} outside universe 1..{self.n}")

    # -- AVL helpers over arena indices ---------------------------------

    def _h(self, s: int) -> int:
        return self._height[s] if s else 0

    def _fix(self, s: int) -> int:
        self._height[s] = 1 + max(self._h(self._left[s]), self._h(self._right[s]))
        bal = self._h(self._left[s]) - self._h(self._right[s])
        if bal > 1:
            if self._h(self._left[self._left[s]]) < self._h(self._right[self._left[s]]):
                self._left[s] = self._rot_left(self._left[s])
            return self._rot_right(s)
        if bal < -1:
            if self._h(self._right[self._right[s]]) < self._h(self._left[self._right[s]]):
                self._right[s] = self._rot_right(self._right[s])
            return self._rot_left(s)
        return s

    def _rot_left(self, s: int) -> int:
        r = self._right[s]
        self._right[s] = self._left[r]
        self._left[r] = s
        self._height[s] = 1 + max(self._h(self._left[s]), self._h(self._right[s]))
        self._height[r] = 1 + max(self._h(self._left[r]), self._h(self._right[r]))
        return r

    def _rot_right(self, s: int) -> int:
        l = self._left[s]
        self._left[s] = self._right[l]
        self._right[l] = s
        self._height[s] = 1 + max(self._h(self._left[s]), self._h(self._right[s]))
        self._height[l] = 1 + max(self._h(self._left[l]), self._h(self._right[l]))
        return l

    def _insert_node(self, root: int, slot: int) -> int:
        if root == _NIL:
            return slot
        if self._key[slot] < self._key[root]:
            self._left[root] = self._insert_node(self._left[root], slot)
        else:
            self._right[root] = self._insert_node(self._right[root], slot)
        return self._fix(root)

    def _delete_node(self, root: int, key: int) -> int:
        if key < self._key[root]:
            self._left[root] = self._delete_node(self._left[root], key)
        elif key > self._key[root]:
            self._right[root] = self._delete_node(self._right[root], key)
        else:
            left, right = self._left[root], self._right[root]
            if left == _NIL or right == _NIL:
                self._free.insert(root)
                return right if left == _NIL else left
            # copy the in-order successor into this slot, then drop it below
            succ = right
            while self._left[succ] != _NIL:
                succ = self._left[succ]
            self._key[root] = self._key[succ]
            self._sat[root] = self._sat[succ]
            self._right[root] = self._delete_node(right, self._key[succ])
        return self._fix(root)

    # -- public API ------------------------------------------------------

    def get(self, key: int) -> Optional[int]:
        self._check(key)
        if not self._member[key]:
            return None
        s = self._roots[(key - 1) // self.bucket_width]
        while self._key[s] != key:
            s = self._left[s] if key < self._key[s] else self._right[s]
        return self._sat[s]

    def insert(self, key: int, value: int) -> None:
        self._check(key)
        if value < 0 or value.bit_length() > self.satellite_bits:
            raise ValueError(f"satellite value {value} wider than {self.satellite_bits} bits")
        b = (key - 1) // self.bucket_width
        if self._member[key]:
            s = self._roots[b]
            while self._key[s] != key:
                s = self._left[s] if key < self._key[s] else self._right[s]
            self._sat[s] = value
            return
        if self._size >= self.capacity:
            raise CapacityError(f"ragged dictionary full ({self.capacity} keys)")
        slot = self._free.choice()
        self._free.delete(slot)
        self._key[slot] = key
        self._sat[slot] = value
        self._left[slot] = self._right[slot] = _NIL
        self._height[slot] = 1
        self._roots[b] = self._insert_node(self._roots[b], slot)
        self._member[key] = 1
        self._size += 1

    def delete(self, key: int) -> None:
        self._check(key)
        if not self._member[key]:
            raise KeyError(key)
        b = (key - 1) // self.bucket_width
        self._roots[b] = self._delete_node(self._roots[b], key)
        self._member[key] = 0
        self._size -= 1

    def release(self) -> None:
        self._free.release()
        if self._ledger is not None:
            self._ledger.release(self._tag, self.bits_registered)
            self._ledger = None
