"""Cut vertices via DFS edge marking, with a dense and a sparse engine."""

from __future__ import annotations

import math
from typing import Optional

from ..graph import Graph
from ..ledger import SpaceLedger
from .dense import cut_vertices_dense, cuts_from_marks
from .marks import EdgeMarkTable, dfs_classify_edges, mark_tree_edges_dense
from .sparse import (SparseStats, assign_hues, cut_vertices_sparse,
                     segment_size_for)

__all__ = [
    "EdgeMarkTable",
    "dfs_classify_edges",
    "mark_tree_edges_dense",
    "cut_vertices_dense",
    "cuts_from_marks",
    "assign_hues",
    "cut_vertices_sparse",
    "segment_size_for",
    "SparseStats",
    "cut_vertices",
    "pick_engine",
]


def pick_engine(n: int, m: int) -> str:
    """Dense while m stays within the n*ceil(log2 log2 n) bit budget."""
    if n <= 4:
        return "dense"
    loglog = math.ceil(math.log2(math.log2(n)))
    return "dense" if m <= n * loglog else "sparse"


def cut_vertices(g: Graph, engine: str = "auto",
                 ledger: Optional[SpaceLedger] = None) -> list[int]:
    if engine == "auto":
        engine = pick_engine(g.n, g.m)
    if engine == "dense":
        return cut_vertices_dense(g, ledger=ledger)
    if engine == "sparse":
        return cut_vertices_sparse(g, ledger=ledger)
    raise ValueError(f"unknown engine {engine!r}")
