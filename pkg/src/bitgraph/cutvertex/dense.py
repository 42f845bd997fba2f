"""Dense cut-vertex engine: O(n + m) bits via full edge marking."""

from __future__ import annotations

from typing import Optional

import numpy as np

from ..graph import Graph
from ..ledger import SpaceLedger
from ._kernels import FULL
from .marks import EdgeMarkTable, dfs_classify_edges, mark_tree_edges_dense


def cut_vertices_dense(g: Graph, ledger: Optional[SpaceLedger] = None) -> list[int]:
    """Ascending cut vertices of g (all components).

    A non-root vertex is a cut vertex iff one of its child edges in the DFS
    tree is unmarked or half marked; a root is a cut vertex iff it has at
    least two children."""
    if g.n == 0:
        return []
    emt = dfs_classify_edges(g, ledger=ledger)
    mark_tree_edges_dense(g, emt)
    cuts = cuts_from_marks(g, emt, ledger=ledger)
    emt.release()
    return cuts


def cuts_from_marks(g: Graph, emt: EdgeMarkTable,
                    ledger: Optional[SpaceLedger] = None) -> list[int]:
    if ledger is not None:
        ledger.register("cutvertex.dense.out", g.n)
    child = (emt.is_tree == 1) & (emt.to_parent == 0)
    bad_child = child & (emt.marks != FULL)
    starts = g.offsets[1:g.n + 1]
    deg = np.diff(g.offsets[1:])
    nonzero = deg > 0
    child_count = np.zeros(g.n, dtype=np.int64)
    bad_count = np.zeros(g.n, dtype=np.int64)
    if g.m:
        sums_c = np.add.reduceat(child.astype(np.int64), np.minimum(starts, 2 * g.m - 1))
        sums_b = np.add.reduceat(bad_child.astype(np.int64), np.minimum(starts, 2 * g.m - 1))
        child_count[nonzero] = sums_c[nonzero]
        bad_count[nonzero] = sums_b[nonzero]
    is_root = emt.parent_slot[1:] < 0
    cut = np.where(is_root, child_count >= 2, bad_count >= 1)
    out = (np.nonzero(cut)[0] + 1).tolist()
    if ledger is not None:
        ledger.release("cutvertex.dense.out", g.n)
    return out
