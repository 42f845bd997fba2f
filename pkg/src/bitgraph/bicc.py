"""Biconnected-component index: O(n+m)-bit preprocessing, then streaming
the component of any query edge in time linear in its size.

The index is the marked edge table plus, per vertex, a flag mask over its
adjacency slots selecting the fully marked tree slots and the back-edge
slots towards ancestors.  A query DFS walks tree edges in both directions,
never expands a vertex it reached over a half-marked or unmarked edge, and
emits each back edge from its descendant side.
"""

from __future__ import annotations

from typing import Iterator, Optional

import numpy as np

from .cutvertex._kernels import FULL
from .cutvertex.marks import EdgeMarkTable, dfs_classify_edges, mark_tree_edges_dense
from .graph import EdgeRef, Graph
from .ledger import SpaceLedger
from .succinct import ChoiceDictionary


class BccIndex:
    def __init__(self, g: Graph, emt: EdgeMarkTable, flags: list[int],
                 ledger: Optional[SpaceLedger], tag: str):
        self.g = g
        self.emt = emt
        self.flags = flags  # per-vertex bitmask over adjacency slots
        self.roots = emt.roots
        self._visited = bytearray(g.n + 1)  # query scratch, cleared per query
        self._ledger = ledger
        self._tag = tag
        self.bits_registered = 2 * g.m + g.n  # flag bit per slot + query scratch
        if ledger is not None:
            ledger.register(tag, self.bits_registered)

    def flagged_slots(self, v: int) -> Iterator[int]:
        """1-based slots of v that carry a flag, ascending."""
        mask = self.flags[v]
        while mask:
            low = mask & -mask
            yield low.bit_length()
            mask ^= low

    def flag_rank(self, v: int, i: int) -> int:
        """Flagged slots among 1..i at v."""
        return (self.flags[v] & ((1 << i) - 1)).bit_count()

    def flag_select(self, v: int, k: int) -> int:
        """k-th flagged slot at v (1-based)."""
        mask = self.flags[v]
        for _ in range(k - 1):
            mask &= mask - 1
        if not mask:
            raise ValueError(f"vertex {v} has fewer than {k} flagged slots")
        return (mask & -mask).bit_length()

    def release(self) -> None:
        self.emt.release()
        if self._ledger is not None:
            self._ledger.release(self._tag, self.bits_registered)
            self._ledger = None


def bcc_build(g: Graph, ledger: Optional[SpaceLedger] = None,
              tag: str = "bicc") -> BccIndex:
    emt = dfs_classify_edges(g, ledger=ledger, tag=tag + ".emt")
    mark_tree_edges_dense(g, emt)
    # flags: fully marked tree slots (both sides) and back slots to ancestors
    flagged = ((emt.is_tree == 1) & (emt.marks == FULL)) | \
              ((emt.is_tree == 0) & (emt.to_parent == 1))
    flags = [0] * (g.n + 1)
    offs = g.offsets
    positions = np.nonzero(flagged)[0]
    owners = np.searchsorted(offs, positions, side="right") - 1
    offs_list = offs.tolist()
    for pos, v in zip(positions.tolist(), owners.tolist()):
        flags[v] |= 1 << (pos - offs_list[v])
    return BccIndex(g, emt, flags, ledger, tag)


def _resolve_edge(g: Graph, e) -> tuple[int, int]:
    """Accept EdgeRef or an (u, v) pair; return a global slot at the deeper
    endpoint later (here: vertex and 0-based slot)."""
    if isinstance(e, EdgeRef):
        v, i = e.vertex, e.slot
        g._check_slot(v, i)
        return v, i - 1
    u, v = e
    g._check_vertex(u)
    g._check_vertex(v)
    base = g.offsets[u]
    for i in range(g.degree(u)):
        if g.neighbors[base + i] == v:
            return u, i
    raise ValueError(f"({u}, {v}) is not an edge")


def _component(idx: BccIndex, start_vertex: int, start_slot: int):
    """Vertices and edge slot pairs of the component containing the given
    directed slot.  Edges are ((v, slot), (u, slot)) with 1-based slots."""
    g = idx.g
    emt = idx.emt
    offs, nbr, mate = g.offsets, g.neighbors, g.mates
    # orient to the deeper endpoint: for tree edges the child side, for back
    # edges the descendant side, is the slot with to_parent set
    s = offs[start_vertex] + start_slot
    if emt.to_parent[s]:
        v = start_vertex
    else:
        v = int(nbr[s])
    visited = idx._visited
    verts = [v]
    edges: list[tuple[EdgeRef, EdgeRef]] = []
    visited[v] = 1
    stack = [v]  # expandable vertices only
    marks, is_tree, to_parent, pslot = emt.marks, emt.is_tree, emt.to_parent, emt.parent_slot

    def emit_edge(x: int, i0: int) -> None:
        j0 = int(mate[offs[x] + i0])
        y = int(nbr[offs[x] + i0])
        edges.append((EdgeRef(x, i0 + 1), EdgeRef(y, j0 + 1)))

    while stack:
        x = stack.pop()
        base = offs[x]
        # parent edge: walk it whatever its mark, but only expand over full
        ps = int(pslot[x])
        if ps >= 0:
            p = int(nbr[base + ps])
            if not visited[p]:
                visited[p] = 1
                verts.append(p)
                emit_edge(x, ps)
                if marks[base + ps] == FULL:
                    stack.append(p)
        for i1 in idx.flagged_slots(x):
            s0 = base + i1 - 1
            if is_tree[s0]:
                if to_parent[s0]:
                    continue  # handled via the parent-slot path
                y = int(nbr[s0])
                if not visited[y]:
                    visited[y] = 1
                    verts.append(y)
                    emit_edge(x, i1 - 1)
                    stack.append(y)
            else:
                # back edge from descendant x up to an ancestor
                emit_edge(x, i1 - 1)
    # half/unmarked parent edges of emitted-but-not-expanded vertices were
    # emitted from the child side; nothing else to do
    for x in verts:
        visited[x] = 0
    return verts, edges


def bcc_component_of(idx: BccIndex, e, mode: str = "both"):
    """Component containing edge e.

    mode == "vertices": list of vertices; "edges": list of EdgeRef pairs;
    "both": (vertices, edges)."""
    v, slot0 = _resolve_edge(idx.g, e)
    verts, edges = _component(idx, v, slot0)
    if mode == "vertices":
        return verts
    if mode == "edges":
        return edges
    if mode == "both":
        return verts, edges
    raise ValueError(f"unknown mode {mode!r}")


def bcc_enumerate(idx: BccIndex, ledger: Optional[SpaceLedger] = None):
    """Yield (component id, vertices, edge refs), one component per edge-
    disjoint block, ids in discovery order of the lowest-indexed edge."""
    g = idx.g
    if g.m == 0:
        return
    pending = ChoiceDictionary(g.m, ledger=ledger, tag="bicc.pending")
    for eid in range(1, g.m + 1):
        pending.insert(eid)
    offs = g.offsets
    slot_edge = g.slot_edge
    cid = 0
    while len(pending):
        eid = pending.choice()
        u = int(g.edge_u[eid - 1])
        slot0 = int(g.edge_slot_u[eid - 1])
        verts, edges = _component(idx, u, slot0)
        cid += 1
        for ref, _mate_ref in edges:
            pending.delete(int(slot_edge[offs[ref.vertex] + ref.slot - 1]) + 1)
        yield cid, verts, edges
    pending.release()
