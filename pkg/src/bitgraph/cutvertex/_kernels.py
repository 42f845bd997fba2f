"""Compiled kernels for the dense cut-vertex engine.

Both passes run over the CSR arrays of the input graph.  The DFS is
deterministic: component roots are the minimum-id unvisited vertices and
slots are explored in ascending order.  Neither pass keeps a stack; the
parent-slot table plus mate indices let the DFS retreat in O(1).
"""

from __future__ import annotations

import numpy as np
from numba import njit

WHITE, GRAY, BLACK = 0, 1, 2
UNMARKED, HALF, FULL = 0, 1, 2


@njit(cache=True)
def classify_kernel(n, offsets, neighbors, mates, colors, is_tree, to_parent,
                    parent_slot, order):
    """First DFS: classify every slot as tree/back with orientation.

    Fills colors (all BLACK on exit), parent_slot (-1 at roots), and the
    discovery order. Returns the number of discovered vertices."""
    pos = 0
    for r in range(1, n + 1):
        if colors[r] != WHITE:
            continue
        colors[r] = GRAY
        parent_slot[r] = -1
        order[pos] = r
        pos += 1
        v = r
        i = 0
        while True:
            base = offsets[v]
            deg = offsets[v + 1] - base
            if i >= deg:
                colors[v] = BLACK
                if v == r:
                    break
                ps = parent_slot[v]
                u = neighbors[base + ps]
                i = mates[base + ps] + 1
                v = u
                continue
            if i == parent_slot[v]:
                i += 1
                continue
            s = base + i
            w = neighbors[s]
            cw = colors[w]
            if cw == WHITE:
                ms = offsets[w] + mates[s]
                is_tree[s] = 1
                to_parent[s] = 0
                is_tree[ms] = 1
                to_parent[ms] = 1
                parent_slot[w] = mates[s]
                colors[w] = GRAY
                order[pos] = w
                pos += 1
                v = w
                i = 0
            elif cw == GRAY:
                # back edge; w is a strict ancestor of v
                ms = offsets[w] + mates[s]
                to_parent[s] = 1
                to_parent[ms] = 0
                i += 1
            else:
                i += 1  # classified from the other side already
    return pos


@njit(cache=True)
def mark_kernel(n, offsets, neighbors, mates, is_tree, to_parent, parent_slot,
                order, count, marks):
    """Second pass: mark tree edges unmarked/half/full.

    Vertices are handled in first-DFS discovery order, which equals the
    order of first visits of the marking DFS.  For each back edge from u
    down to a descendant w, the walk full-marks w's parent chain until it
    meets u (half mark) or an already-full edge."""
    for idx in range(count):
        u = order[idx]
        base = offsets[u]
        deg = offsets[u + 1] - base
        for i in range(deg):
            s = base + i
            if is_tree[s] or to_parent[s]:
                continue
            # back edge u -> descendant w
            w = neighbors[s]
            while True:
                ps = parent_slot[w]
                wbase = offsets[w]
                v = neighbors[wbase + ps]
                child_side = wbase + ps
                par_side = offsets[v] + mates[child_side]
                if v == u:
                    if marks[child_side] == UNMARKED:
                        marks[child_side] = HALF
                        marks[par_side] = HALF
                    break
                if marks[child_side] == FULL:
                    break
                marks[child_side] = FULL
                marks[par_side] = FULL
                w = v
