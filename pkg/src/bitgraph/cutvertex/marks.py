"""Edge classification and marking tables for the dense engine."""

from __future__ import annotations

from typing import Optional

import numpy as np

from ..graph import Graph
from ..ledger import SpaceLedger
from ._kernels import (BLACK, FULL, HALF, UNMARKED, WHITE, classify_kernel,
                       mark_kernel)

_MARK_NAMES = {UNMARKED: "unmarked", HALF: "half", FULL: "full"}


class EdgeMarkTable:
    """Per-slot tree/back flags, orientation, marks, and per-vertex parent slots.

    The registered footprint follows the declared layout: four bits per
    directed slot (tree flag, orientation, two mark bits) plus a parent
    slot of ceil(log2(deg+1)) bits per vertex, laid out with static space
    allocation (whose marker overhead is included analytically).
    """

    def __init__(self, g: Graph, ledger: Optional[SpaceLedger] = None,
                 tag: str = "cutvertex.emt"):
        self.g = g
        nslots = 2 * g.m
        self.is_tree = np.zeros(nslots, dtype=np.uint8)
        self.to_parent = np.zeros(nslots, dtype=np.uint8)
        self.marks = np.zeros(nslots, dtype=np.uint8)
        self.parent_slot = np.full(g.n + 1, -1, dtype=np.int64)
        self.order = np.zeros(g.n, dtype=np.int32)
        self.count = 0
        self.roots: list[int] = []

        deg = np.diff(g.offsets[1:])
        pwidths = np.ceil(np.log2(deg + 1)).astype(np.int64)
        slot_bits = 4 * nslots
        parent_bits = int(pwidths.sum())
        marker_bits = g.n + slot_bits + parent_bits  # static-allocation marker vector
        self.bits_registered = slot_bits + parent_bits + marker_bits
        self._ledger = ledger
        self._tag = tag
        if ledger is not None:
            ledger.register(tag, self.bits_registered)

    # -- 1-based accessors used by tests and the BCC index ---------------

    def slot_is_tree(self, v: int, i: int) -> bool:
        return bool(self.is_tree[self.g.offsets[v] + i - 1])

    def slot_to_parent(self, v: int, i: int) -> bool:
        return bool(self.to_parent[self.g.offsets[v] + i - 1])

    def slot_mark(self, v: int, i: int) -> str:
        return _MARK_NAMES[int(self.marks[self.g.offsets[v] + i - 1])]

    def tree_edges(self) -> list[tuple[int, int]]:
        """Tree edges as (parent, child) pairs."""
        out = []
        for child in range(1, self.g.n + 1):
            ps = int(self.parent_slot[child])
            if ps >= 0:
                out.append((int(self.g.neighbors[self.g.offsets[child] + ps]), child))
        return out

    def release(self) -> None:
        if self._ledger is not None:
            self._ledger.release(self._tag, self.bits_registered)
            self._ledger = None


def dfs_classify_edges(g: Graph, ledger: Optional[SpaceLedger] = None,
                       tag: str = "cutvertex.emt") -> EdgeMarkTable:
    """Run the classification DFS and return the filled table."""
    emt = EdgeMarkTable(g, ledger=ledger, tag=tag)
    colors = np.zeros(g.n + 1, dtype=np.uint8)
    if ledger is not None:
        ledger.register(tag + ".colors", 2 * g.n)
    emt.count = classify_kernel(g.n, g.offsets, g.neighbors, g.mates, colors,
                                emt.is_tree, emt.to_parent, emt.parent_slot,
                                emt.order)
    if ledger is not None:
        ledger.release(tag + ".colors", 2 * g.n)
    emt.roots = [int(v) for v in emt.order[:emt.count] if emt.parent_slot[v] < 0]
    return emt


def mark_tree_edges_dense(g: Graph, emt: EdgeMarkTable) -> EdgeMarkTable:
    """Second pass: fill the unmarked/half/full marks in place."""
    mark_kernel(g.n, g.offsets, g.neighbors, g.mates, emt.is_tree,
                emt.to_parent, emt.parent_slot, emt.order, emt.count, emt.marks)
    return emt
