"""Sparse cut-vertex engine: O(n log log n) bits.

The DFS keeps two stacks.  The path stack holds (vertex, resume slot,
parent slot) for every gray vertex; the open stack holds (vertex, depth)
for gray vertices whose edge to their gray child is not yet fully marked.
Both are segmented: only the two newest segments stay resident, older
ones are discarded down to an anchor entry and rebuilt on demand by
replaying the deterministic DFS from the component root with a fresh
scratch colouring (worst case O(n+m) per restoration).

Marks live in two bits per vertex describing the edge to the current gray
child.  Back-edge processing compares hues first (hues are monotone along
the root path) and consults a per-hue depth satellite only for the target
vertex itself, so at most three satellites are ever live.
"""

from __future__ import annotations

import math
from collections import Counter
from functools import lru_cache
from typing import Callable, Optional

import numpy as np

from ..graph import Graph
from ..ledger import SpaceLedger

WHITE, GRAY, BLACK = 0, 1, 2
UNMARKED, HALF, FULL = 0, 1, 2

_TAG = "cutvertex.sparse"


def segment_size_for(n: int) -> int:
    """ceil(n / ceil(log2 n)): Theta(log n) segments of Theta(n / log n)."""
    if n <= 2:
        return max(1, n)
    lg = math.ceil(math.log2(n))
    return -(-n // lg)


def hue_bits(n: int, segment_size: int) -> int:
    nseg = -(-n // segment_size) if n else 0
    return n * max(1, math.ceil(math.log2(nseg + 1))) if n else 0


class _SegStack:
    """Stack in fixed-size segments, at most two resident."""

    def __init__(self, seg_size: int, restore: Callable[[int, int], list],
                 shadow: Optional[list] = None):
        self.ss = seg_size
        self.h = 0
        self._restore = restore
        self._resident: dict[int, list] = {}
        self._anchors: dict[int, list] = {}
        self.restores = 0
        self.shadow = shadow

    def push(self, entry: list) -> None:
        si, off = divmod(self.h, self.ss)
        buf = self._resident.get(si)
        if buf is None:
            buf = []
            self._resident[si] = buf
            for k in [k for k in self._resident if k < si - 1]:
                seg = self._resident.pop(k)
                if seg:
                    self._anchors[k] = list(seg[0])
        buf.append(entry)
        self.h += 1
        if self.shadow is not None:
            self.shadow.append(list(entry))

    def pop(self) -> list:
        idx = self.h - 1
        buf = self._ensure(idx)
        entry = buf.pop()
        self.h = idx
        if self.shadow is not None:
            ref = self.shadow.pop()
            assert ref == entry, f"segment restore mismatch: {ref} != {entry}"
        return entry

    def top(self) -> list:
        idx = self.h - 1
        return self._ensure(idx)[idx % self.ss]

    def set_top_resume(self, value: int) -> None:
        self.top()[1] = value
        if self.shadow is not None:
            self.shadow[-1][1] = value

    def _ensure(self, idx: int) -> list:
        si = idx // self.ss
        buf = self._resident.get(si)
        if buf is None:
            length = self.h - si * self.ss
            if length > self.ss:
                length = self.ss
            buf = self._restore(si * self.ss, length)
            self.restores += 1
            anchor = self._anchors.get(si)
            assert anchor is None or anchor == buf[0], \
                f"anchor mismatch at segment {si}: {anchor} != {buf[0]}"
            if self.shadow is not None:
                ref = [list(e) for e in self.shadow[si * self.ss:si * self.ss + length]]
                assert ref == buf, f"restored segment {si} differs from shadow"
            # coming back down: everything above is empty, drop it
            for k in [k for k in self._resident if k > si]:
                del self._resident[k]
            self._resident[si] = buf
        return buf


@lru_cache(maxsize=None)
def _rank_table(width: int) -> tuple:
    """prefix-rank lookup: table[pattern][offset] = set bits before offset."""
    table = []
    for pattern in range(1 << width):
        row = []
        seen = 0
        for off in range(width):
            row.append(seen)
            seen += pattern >> off & 1
        table.append(tuple(row))
    return tuple(table)


class _DepthSat:
    """Depths of the currently-gray vertices of one hue, addressed by vertex.

    Blocks of ceil(log2(n)/2) vertex ids carry an occupancy pattern and a
    base offset; the in-block position comes from the pattern lookup table."""

    def __init__(self, n: int, hue_np: np.ndarray, target: int, block_width: int,
                 ledger: Optional[SpaceLedger], tag: str):
        self.bw = block_width
        want = hue_np[1:n + 1] == target
        nb = -(-n // block_width)
        padded = np.zeros(nb * block_width, dtype=np.int64)
        padded[:n] = want
        blocks = padded.reshape(nb, block_width)
        self._patt = (blocks @ (1 << np.arange(block_width, dtype=np.int64))).tolist()
        counts = blocks.sum(axis=1)
        self._base = np.concatenate(([0], np.cumsum(counts)[:-1])).tolist()
        self.count = int(counts.sum())
        self._depths = [-1] * self.count
        self._table = _rank_table(block_width)
        self._ledger = ledger
        self._tag = tag
        width = max(1, (n + 1).bit_length())
        self.bits_registered = (self.count * width + nb * max(1, self.count.bit_length())
                                + n)
        if ledger is not None:
            ledger.register(tag, self.bits_registered)

    def _pos(self, v: int) -> int:
        b, off = divmod(v - 1, self.bw)
        return self._base[b] + self._table[self._patt[b]][off]

    def set(self, v: int, depth: int) -> None:
        self._depths[self._pos(v)] = depth

    def get(self, v: int) -> int:
        return self._depths[self._pos(v)]

    def release(self) -> None:
        if self._ledger is not None:
            self._ledger.release(self._tag, self.bits_registered)
            self._ledger = None


def _replay(off: list, nbr: list, mate: list, n: int, root: int, push_limit: int,
            s_lo: int = 0, s_buf: Optional[list] = None,
            u_lo: int = 0, u_buf: Optional[list] = None,
            on_u: Optional[bytearray] = None,
            hue: Optional[list] = None, a_hue: int = 0,
            a_set: Optional[Callable[[int, int], None]] = None) -> None:
    """Re-run the deterministic DFS from `root` up to its `push_limit`-th
    vertex discovery, rebuilding the requested state along the way."""
    colors = bytearray(n + 1)
    pslot = [-1] * (n + 1)
    s_hi = s_lo + (len(s_buf) if s_buf is not None else 0)
    u_hi = u_lo + (len(u_buf) if u_buf is not None else 0)

    colors[root] = GRAY
    pushes = 1
    h = 1
    hu = 0
    if s_buf is not None and s_lo == 0:
        s_buf[0] = [root, 0, -1]
    if a_set is not None and hue[root] == a_hue:
        a_set(root, 0)
    if pushes == push_limit:
        return
    v = root
    i = 0
    while True:
        base = off[v]
        deg = off[v + 1] - base
        if i >= deg:
            if v == root:
                raise AssertionError("replay finished before its push limit")
            colors[v] = BLACK
            ps = pslot[v]
            u = nbr[base + ps]
            if on_u is not None and on_u[u]:
                hu -= 1
            h -= 1
            i = mate[base + ps] + 1
            v = u
            continue
        if i == pslot[v]:
            i += 1
            continue
        s = base + i
        w = nbr[s]
        if colors[w] == WHITE:
            if s_buf is not None:
                pi = h - 1
                if s_lo <= pi < s_hi:
                    ent = s_buf[pi - s_lo]
                    if ent is None:
                        s_buf[pi - s_lo] = [v, i + 1, pslot[v]]
                    else:
                        ent[0] = v
                        ent[1] = i + 1
                        ent[2] = pslot[v]
                if s_lo <= h < s_hi:
                    s_buf[h - s_lo] = [w, 0, mate[s]]
            if on_u is not None and on_u[v]:
                if u_buf is not None and u_lo <= hu < u_hi:
                    u_buf[hu - u_lo] = [v, h - 1]
                hu += 1
            if a_set is not None and hue[w] == a_hue:
                a_set(w, h)
            pslot[w] = mate[s]
            colors[w] = GRAY
            h += 1
            pushes += 1
            if pushes == push_limit:
                return
            v = w
            i = 0
        else:
            i += 1


def assign_hues(g: Graph, segment_size: int,
                ledger: Optional[SpaceLedger] = None) -> list[int]:
    """Hue of each vertex: ceil(p / segment_size) for DFS visit position p.

    Runs its own segmented DFS so the table is built within the sparse
    budget; the table itself stays registered for the caller to release."""
    if segment_size < 1:
        raise ValueError("segment size must be positive")
    n = g.n
    hue = [0] * (n + 1)
    if ledger is not None:
        ledger.register(_TAG + ".hue", hue_bits(n, segment_size))
    if n == 0:
        return hue
    off, nbr, mate, _ = g.adjacency_lists()
    colors = bytearray(n + 1)
    psbits = _parent_slot_bits(g)
    word = max(1, (n + 1).bit_length())
    if ledger is not None:
        ledger.register(_TAG + ".prepass", 2 * n + 2 * segment_size * 3 * word)

    state = {"root": 0, "pushes": 0}

    def restore(lo: int, length: int) -> list:
        if ledger is not None:
            ledger.register(_TAG + ".restore", 2 * n + psbits)
        buf: list = [None] * length
        _replay(off, nbr, mate, n, state["root"], state["pushes"],
                s_lo=lo, s_buf=buf)
        if ledger is not None:
            ledger.release(_TAG + ".restore", 2 * n + psbits)
        return buf

    stack = _SegStack(segment_size, restore)
    pos = 0
    for r in range(1, n + 1):
        if colors[r] != WHITE:
            continue
        state["root"] = r
        state["pushes"] = 1
        colors[r] = GRAY
        pos += 1
        hue[r] = -(-pos // segment_size)
        stack.push([r, 0, -1])
        v, i, pm = r, 0, -1
        while True:
            base = off[v]
            if i >= off[v + 1] - base:
                colors[v] = BLACK
                stack.pop()
                if stack.h == 0:
                    break
                ent = stack.top()
                v, i, pm = ent[0], ent[1], ent[2]
                continue
            if i == pm:
                i += 1
                continue
            w = nbr[base + i]
            if colors[w] == WHITE:
                stack.set_top_resume(i + 1)
                pm_w = mate[base + i]
                stack.push([w, 0, pm_w])
                state["pushes"] += 1
                colors[w] = GRAY
                pos += 1
                hue[w] = -(-pos // segment_size)
                v, i, pm = w, 0, pm_w
            else:
                i += 1
    if ledger is not None:
        ledger.release(_TAG + ".prepass", 2 * n + 2 * segment_size * 3 * word)
    return hue


def _parent_slot_bits(g: Graph) -> int:
    deg = np.diff(g.offsets[1:])
    return int(np.ceil(np.log2(deg + 1)).sum())


class SparseStats:
    def __init__(self) -> None:
        self.s_restores = 0
        self.u_restores = 0
        self.depthsat_rebuilds = 0


def cut_vertices_sparse(g: Graph, ledger: Optional[SpaceLedger] = None,
                        shadow: bool = False,
                        stats: Optional[SparseStats] = None) -> list[int]:
    eng = _SparseEngine(g, ledger, shadow)
    out = eng.run()
    if stats is not None:
        stats.s_restores = eng.stack_s.restores
        stats.u_restores = eng.stack_u.restores
        stats.depthsat_rebuilds = eng.depthsat_rebuilds
    return out


class _SparseEngine:
    def __init__(self, g: Graph, ledger: Optional[SpaceLedger], shadow: bool):
        self.g = g
        self.n = g.n
        self.ledger = ledger
        self.shadow = shadow
        self.ss = segment_size_for(max(1, g.n))
        self.word = max(1, (g.n + 1).bit_length())
        self.block_width = max(1, min(16, math.ceil((math.log2(g.n)) / 2)) if g.n > 1 else 1)
        self.psbits = _parent_slot_bits(g)
        self.depthsat_rebuilds = 0

    def run(self) -> list[int]:
        n, g, ledger = self.n, self.g, self.ledger
        if n == 0:
            return []
        off, nbr, mate, _ = g.adjacency_lists()
        self.hue = assign_hues(g, self.ss, ledger)
        hue = self.hue
        self.hue_np = np.asarray(hue, dtype=np.int64)
        nseg = -(-n // self.ss)

        colors = bytearray(n + 1)
        out = bytearray(n + 1)
        on_u = bytearray(n + 1)
        umark = bytearray(n + 1)
        if ledger is not None:
            ledger.register(_TAG + ".colors", 2 * n)
            ledger.register(_TAG + ".out", n)
            ledger.register(_TAG + ".onU", n)
            ledger.register(_TAG + ".umark", 2 * n)
            ledger.register(_TAG + ".stacks",
                            2 * self.ss * 3 * self.word   # path-stack segments
                            + 2 * self.ss * 2 * self.word  # open-stack segments
                            + (nseg + 1) * 3 * self.word   # anchors
                            + (nseg + 2) * 2 * self.word)  # hue counters for Z
        self.on_u = on_u

        self.comp_root = 0
        self.comp_pushes = 0
        self.stack_s = _SegStack(self.ss, self._restore_s, [] if self.shadow else None)
        self.stack_u = _SegStack(self.ss, self._restore_u, [] if self.shadow else None)
        self._off, self._nbr, self._mate = off, nbr, mate

        live_a: dict[int, _DepthSat] = {}
        self.live_a = live_a
        zcnt = [0] * (nseg + 2)
        zmax = 0
        cur_hue = 0

        S, U = self.stack_s, self.stack_u
        for r in range(1, n + 1):
            if colors[r] != WHITE:
                continue
            self.comp_root = r
            self.comp_pushes = 1
            colors[r] = GRAY
            root_children = 0
            S.push([r, 0, -1])
            hr = hue[r]
            if hr != cur_hue:
                cur_hue = hr
                self._ensure_depthsat(hr, fresh=True)
                self._evict(cur_hue, zmax)
            live_a[hr].set(r, 0)
            v, i, pm = r, 0, -1
            while True:
                base = off[v]
                if i >= off[v + 1] - base:
                    # retreat from v
                    colors[v] = BLACK
                    S.pop()
                    if S.h == 0:
                        break
                    ent = S.top()
                    u = ent[0]
                    if u != r and umark[u] != FULL and not out[u]:
                        out[u] = 1
                    if on_u[u]:
                        ue = U.pop()
                        on_u[u] = 0
                        hu_ = hue[u]
                        zcnt[hu_] -= 1
                        if hu_ == zmax:
                            while zmax > 0 and zcnt[zmax] == 0:
                                zmax -= 1
                    v, i, pm = u, ent[1], ent[2]
                    continue
                if i == pm:
                    i += 1
                    continue
                w = nbr[base + i]
                cw = colors[w]
                if cw == WHITE:
                    S.set_top_resume(i + 1)
                    depth_v = S.h - 1
                    U.push([v, depth_v])
                    on_u[v] = 1
                    umark[v] = UNMARKED
                    hv = hue[v]
                    zcnt[hv] += 1
                    if hv > zmax:
                        zmax = hv
                    pm_w = mate[base + i]
                    S.push([w, 0, pm_w])
                    self.comp_pushes += 1
                    colors[w] = GRAY
                    if v == r:
                        root_children += 1
                    hw = hue[w]
                    if hw != cur_hue:
                        cur_hue = hw
                        self._ensure_depthsat(hw, fresh=True)
                        self._evict(cur_hue, zmax)
                    live_a[hw].set(w, S.h - 1)
                    v, i, pm = w, 0, pm_w
                    if self.shadow and n <= 512:
                        self._check_subset()
                elif cw == GRAY:
                    # back edge from v up to w
                    target_hue = hue[w]
                    dp_u = -1
                    while U.h > 0:
                        te = U.top()
                        th = hue[te[0]]
                        if th < target_hue:
                            break
                        if th == target_hue:
                            if dp_u < 0:
                                if target_hue not in live_a:
                                    self._ensure_depthsat(target_hue, fresh=False)
                                    self._evict(cur_hue, zmax, keep=target_hue)
                                dp_u = live_a[target_hue].get(w)
                            if te[1] < dp_u:
                                break
                            if te[1] == dp_u:
                                umark[w] = HALF
                                break
                        # strictly deeper than w: full mark and pop
                        U.pop()
                        uv = te[0]
                        umark[uv] = FULL
                        on_u[uv] = 0
                        zcnt[th] -= 1
                        if th == zmax:
                            while zmax > 0 and zcnt[zmax] == 0:
                                zmax -= 1
                        continue
                    i += 1
                else:
                    i += 1
            if root_children >= 2:
                out[r] = 1
            assert U.h == 0, "open stack must drain with the path stack"
        result = [v for v in range(1, n + 1) if out[v]]
        self._teardown(nseg)
        return result

    # -- depth satellites -------------------------------------------------

    def _ensure_depthsat(self, h: int, fresh: bool) -> None:
        if h in self.live_a:
            return
        sat = _DepthSat(self.n, self.hue_np, h, self.block_width, self.ledger,
                        _TAG + ".depthsat")
        self.live_a[h] = sat
        if not fresh:
            self.depthsat_rebuilds += 1
            self._with_restore_bits(lambda: _replay(
                self._off, self._nbr, self._mate, self.n, self.comp_root,
                self.comp_pushes, hue=self.hue, a_hue=h, a_set=sat.set))

    def _evict(self, cur_hue: int, zmax: int, keep: int = -1) -> None:
        for h in list(self.live_a):
            if h not in (cur_hue, zmax, keep):
                self.live_a[h].release()
                del self.live_a[h]

    # -- stack restoration -------------------------------------------------

    def _with_restore_bits(self, fn):
        if self.ledger is not None:
            self.ledger.register(_TAG + ".restore", 2 * self.n + self.psbits)
        try:
            return fn()
        finally:
            if self.ledger is not None:
                self.ledger.release(_TAG + ".restore", 2 * self.n + self.psbits)

    def _restore_s(self, lo: int, length: int) -> list:
        buf: list = [None] * length
        self._with_restore_bits(lambda: _replay(
            self._off, self._nbr, self._mate, self.n, self.comp_root,
            self.comp_pushes, s_lo=lo, s_buf=buf))
        return buf

    def _restore_u(self, lo: int, length: int) -> list:
        buf: list = [None] * length
        self._with_restore_bits(lambda: _replay(
            self._off, self._nbr, self._mate, self.n, self.comp_root,
            self.comp_pushes, u_lo=lo, u_buf=buf, on_u=self.on_u))
        return buf

    def _check_subset(self) -> None:
        s_verts = Counter(e[0] for e in self.stack_s.shadow)
        u_verts = Counter(e[0] for e in self.stack_u.shadow)
        assert not (u_verts - s_verts), "open stack is not a subset of the path stack"

    def _teardown(self, nseg: int) -> None:
        for sat in self.live_a.values():
            sat.release()
        self.live_a.clear()
        if self.ledger is not None:
            n, word = self.n, self.word
            self.ledger.release(_TAG + ".colors", 2 * n)
            self.ledger.release(_TAG + ".out", n)
            self.ledger.release(_TAG + ".onU", n)
            self.ledger.release(_TAG + ".umark", 2 * n)
            self.ledger.release(_TAG + ".stacks",
                                2 * self.ss * 3 * word + 2 * self.ss * 2 * word
                                + (nseg + 1) * 3 * word + (nseg + 2) * 2 * word)
            self.ledger.release(_TAG + ".hue", hue_bits(n, self.ss))
