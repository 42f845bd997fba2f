"""The shrinking subgraph that the outerplanarity phases operate on.

One WorkGraph is allocated per recognizer run and re-seeded for every
biconnected component.  Live original edges sit in per-vertex slot
bitmasks; artificial edges and shortcuts live as packed records in one
ragged dictionary keyed by vertex.  Path counters (two bits per edge side,
saturating) count removed internally-disjoint paths between an edge's
endpoints; any counter passing two refutes outerplanarity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

from ..graph import Graph
from ..ledger import SpaceLedger
from ..succinct import ChoiceDictionary, RaggedDictionary

_TAG = "outerplanar"

# rejection reasons
LOOP_DETECTED = "loop-detected"
PATH_COUNT_EXCEEDED = "path-count-exceeded"
THREE_DEGREE_TWO_NEIGHBORS = "three-degree-two-neighbors"
AUX_CAPACITY_EXCEEDED = "aux-capacity-exceeded"
ARTIFICIAL_SLOTS_EXHAUSTED = "artificial-slots-exhausted"
CLOSED_CHAIN_OVERFLOW = "closed-chain-overflow"
D_EXHAUSTED = "work-queue-exhausted"
EDGE_BOUND = "edge-bound"


class NotOuterplanarSignal(Exception):
    """Internal control flow: the current component refutes outerplanarity."""

    def __init__(self, reason: str):
        self.reason = reason
        super().__init__(reason)


@dataclass
class ChainDescriptor:
    endpoint_a: int = 0
    endpoint_b: int = 0
    first_inner: int = 0
    last_inner: int = 0
    inner_count: int = 0
    is_cycle: bool = False
    tried_hit: bool = False
    is_closed: bool = False
    is_good: bool = False
    closing: object = None            # edge handle once the closed test ran
    portals: list = field(default_factory=list)
    jumped: list = field(default_factory=list)


class WorkGraph:
    """Current subgraph state shared by both phases."""

    def __init__(self, g: Graph, ledger: Optional[SpaceLedger] = None,
                 trace: Optional[list] = None):
        self.g = g
        self.n = g.n
        self.ledger = ledger
        self.trace = trace
        n = g.n
        self.offs, self.nbr, self.mate, _ = g.adjacency_lists()
        self.word = max(1, (n + 1).bit_length())

        self.alive = ChoiceDictionary(n, ledger=ledger, tag=_TAG + ".alive")
        self.dq = ChoiceDictionary(n, ledger=ledger, tag=_TAG + ".queue")
        self.slot_masks = [0] * (n + 1)
        self.curdeg = [0] * (n + 1)
        self.tried = bytearray(n + 1)
        self.has_aux = bytearray(n + 1)
        self.pcnt = bytearray(2 * g.m)

        lg = max(1.0, math.log2(n)) if n > 1 else 1.0
        self.aux_capacity = 4 * math.ceil(n / lg) + 8
        self.sat_bits = 4 * self.word + 4
        self.aux = RaggedDictionary(max(1, n), self.sat_bits, self.aux_capacity,
                                    ledger=ledger, tag=_TAG + ".aux")
        if ledger is not None:
            deg_bits = int(sum(max(1, d.bit_length())
                               for d in (self.offs[v + 1] - self.offs[v]
                                         for v in range(1, n + 1))))
            self._fixed_bits = (2 * g.m            # slot masks
                                + deg_bits          # current degrees
                                + n                 # tried marks
                                + n                 # aux presence bits
                                + 4 * g.m)          # path counters, both sides
            ledger.register(_TAG + ".workgraph", self._fixed_bits)

        # per-component state
        self.comp_n = 0
        self.edges_left = 0
        self.live_aux = 0
        self.max_live_aux = 0
        self.q = -1  # < 0 while the phase-2 budget is not yet fixed
        self.final_edge: tuple[int, int] | None = None

    # -- aux record codec -------------------------------------------------

    def _unpack(self, sat: int):
        w = self.word
        m1 = (1 << w) - 1
        a1 = sat & m1
        p1 = sat >> w & 3
        a2 = sat >> (w + 2) & m1
        p2 = sat >> (2 * w + 2) & 3
        scp = sat >> (2 * w + 4) & m1
        sce = sat >> (3 * w + 4) & m1
        return a1, p1, a2, p2, scp, sce

    def _pack(self, a1, p1, a2, p2, scp, sce) -> int:
        w = self.word
        return (a1 | p1 << w | a2 << (w + 2) | p2 << (2 * w + 2)
                | scp << (2 * w + 4) | sce << (3 * w + 4))

    def _record(self, v: int):
        if not self.has_aux[v]:
            return (0, 0, 0, 0, 0, 0)
        return self._unpack(self.aux.get(v))

    def _store(self, v: int, rec) -> None:
        if any(rec):
            self.aux.insert(v, self._pack(*rec))
            self.has_aux[v] = 1
        elif self.has_aux[v]:
            self.aux.delete(v)
            self.has_aux[v] = 0

    # -- component seeding -------------------------------------------------

    def reset_component(self, verts: list[int], edge_refs: list) -> None:
        """Seed the work graph with one biconnected component.

        edge_refs holds ((v, slot), (u, slot)) pairs with 1-based slots."""
        offs = self.offs
        self.alive.clear()
        self.dq.clear()
        for v in verts:
            self.alive.insert(v)
            self.slot_masks[v] = 0
            self.curdeg[v] = 0
            self.tried[v] = 0
        for (v, i), (u, j) in edge_refs:
            self.slot_masks[v] |= 1 << (i - 1)
            self.slot_masks[u] |= 1 << (j - 1)
            self.curdeg[v] += 1
            self.curdeg[u] += 1
        self.comp_n = len(verts)
        self.edges_left = len(edge_refs)
        self.live_aux = 0
        self.max_live_aux = 0
        self.q = -1
        self.final_edge = None

    # -- incidences ---------------------------------------------------------

    def incidences(self, v: int) -> list:
        """Live (neighbor, handle) pairs; handles are global slot ints for
        original edges and ('a', v, w) tuples for artificial ones."""
        out = []
        mask = self.slot_masks[v]
        base = self.offs[v]
        nbr = self.nbr
        while mask:
            low = mask & -mask
            s = base + low.bit_length() - 1
            out.append((nbr[s], s))
            mask ^= low
        if self.has_aux[v]:
            a1, _, a2, _, _, _ = self._record(v)
            if a1:
                out.append((a1, ("a", v, a1)))
            if a2:
                out.append((a2, ("a", v, a2)))
        return out

    def other_neighbor(self, v: int, not_w: int):
        for w, h in self.incidences(v):
            if w != not_w:
                return w, h
        raise AssertionError(f"degree-2 vertex {v} has no neighbor besides {not_w}")

    def find_handle(self, v: int, w: int):
        for x, h in self.incidences(v):
            if x == w:
                return h
        raise AssertionError(f"no live edge between {v} and {w}")

    def handle_endpoints(self, h) -> tuple[int, int]:
        if isinstance(h, int):
            v = self.nbr[self.offs[self.nbr[h]] + self.mate[h]]
            return v, self.nbr[h]
        return h[1], h[2]

    # -- path counters -------------------------------------------------------

    def path_count(self, h) -> int:
        if isinstance(h, int):
            return self.pcnt[h]
        _, v, w = h
        a1, p1, a2, p2, _, _ = self._record(v)
        if a1 == w:
            return p1
        if a2 == w:
            return p2
        raise AssertionError(f"no artificial edge {v}-{w}")

    def increment_path(self, h) -> None:
        if isinstance(h, int):
            val = self.pcnt[h] + 1
            if val > 2:
                raise NotOuterplanarSignal(PATH_COUNT_EXCEEDED)
            self.pcnt[h] = val
            other = self.nbr[h]
            ms = self.offs[other] + self.mate[h]
            self.pcnt[ms] = val
            return
        _, v, w = h
        for a, b in ((v, w), (w, v)):
            rec = list(self._record(a))
            if rec[0] == b:
                rec[1] += 1
                bad = rec[1] > 2
            elif rec[2] == b:
                rec[3] += 1
                bad = rec[3] > 2
            else:
                raise AssertionError(f"no artificial edge {a}-{b}")
            if bad:
                raise NotOuterplanarSignal(PATH_COUNT_EXCEEDED)
            self._store(a, tuple(rec))

    # -- edge and vertex removal ----------------------------------------------

    def remove_edge(self, h) -> None:
        if isinstance(h, int):
            other = self.nbr[h]
            ms = self.offs[other] + self.mate[h]
            v = self.nbr[ms]
            self.slot_masks[v] &= ~(1 << (h - self.offs[v]))
            self.slot_masks[other] &= ~(1 << (ms - self.offs[other]))
            self.curdeg[v] -= 1
            self.curdeg[other] -= 1
        else:
            _, v, w = h
            for a, b in ((v, w), (w, v)):
                rec = list(self._record(a))
                if rec[0] == b:
                    rec[0] = rec[1] = 0
                elif rec[2] == b:
                    rec[2] = rec[3] = 0
                else:
                    raise AssertionError(f"no artificial edge {a}-{b}")
                self._store(a, tuple(rec))
                self.curdeg[a] -= 1
            self.live_aux -= 1
        self.edges_left -= 1

    def remove_vertex(self, v: int) -> None:
        assert not self.has_aux[v], f"vertex {v} removed with live aux records"
        self.alive.discard(v)
        self.dq.discard(v)
        self.slot_masks[v] = 0
        self.curdeg[v] = 0

    # -- artificial edges -----------------------------------------------------

    def artificial_between(self, v: int, w: int) -> bool:
        a1, _, a2, _, _, _ = self._record(v)
        return w in (a1, a2)

    def add_artificial(self, v: int, w: int) -> None:
        for a, b in ((v, w), (w, v)):
            rec = list(self._record(a))
            if rec[0] == 0:
                rec[0], rec[1] = b, 1
            elif rec[2] == 0:
                rec[2], rec[3] = b, 1
            else:
                raise NotOuterplanarSignal(ARTIFICIAL_SLOTS_EXHAUSTED)
            self._store(a, tuple(rec))
            self.curdeg[a] += 1
        self.live_aux += 1
        self._aux_guard()

    # -- shortcuts --------------------------------------------------------------

    def shortcut_at(self, v: int) -> tuple[int, int] | None:
        """(partner portal, own exterior neighbor) or None."""
        if not self.has_aux[v]:
            return None
        _, _, _, _, scp, sce = self._record(v)
        return (scp, sce) if scp else None

    def add_shortcut(self, first: int, last: int, exit_first: int, exit_last: int) -> None:
        if first == last:
            rec = list(self._record(first))
            rec[4], rec[5] = first, 0
            self._store(first, tuple(rec))
        else:
            rec = list(self._record(first))
            rec[4], rec[5] = last, exit_first
            self._store(first, tuple(rec))
            rec = list(self._record(last))
            rec[4], rec[5] = first, exit_last
            self._store(last, tuple(rec))
        self.live_aux += 1
        self._aux_guard()

    def remove_shortcut_at(self, v: int) -> None:
        """Drop the shortcut pair one of whose portals is v (idempotent)."""
        sc = self.shortcut_at(v)
        if sc is None:
            return
        partner = sc[0]
        for x in {v, partner}:
            rec = list(self._record(x))
            rec[4] = rec[5] = 0
            self._store(x, tuple(rec))
        self.live_aux -= 1

    def _aux_guard(self) -> None:
        if self.live_aux > self.max_live_aux:
            self.max_live_aux = self.live_aux
        if 0 <= self.q and self.live_aux > 2 * self.q:
            raise NotOuterplanarSignal(AUX_CAPACITY_EXCEEDED)

    # -- teardown ---------------------------------------------------------------

    def release(self) -> None:
        self.alive.release()
        self.dq.release()
        self.aux.release()
        if self.ledger is not None:
            self.ledger.release(_TAG + ".workgraph", self._fixed_bits)
            self.ledger = None


class _WalkEnd:
    __slots__ = ("kind", "endpoint", "last_inner", "count")

    def __init__(self, kind: str, endpoint: int, last_inner: int, count: int):
        self.kind = kind          # "end" | "cycle" | "tried"
        self.endpoint = endpoint
        self.last_inner = last_inner
        self.count = count


def _walk_direction(wg: WorkGraph, start: int, first: int, c: ChainDescriptor,
                    allow, check_tried: bool, pop_dq: bool,
                    scan_mark: bool) -> _WalkEnd:
    """Walk from start towards `first` until a vertex of degree != 2, the
    start (cycle), or a tried vertex outside the allow set."""
    curdeg = wg.curdeg
    tried = wg.tried
    prev, cur = start, first
    count = 0
    while cur != start and curdeg[cur] == 2:
        if check_tried and tried[cur] and cur not in allow:
            return _WalkEnd("tried", cur, prev, count)
        if pop_dq:
            wg.dq.discard(cur)
        if scan_mark:
            tried[cur] = 1
        count += 1
        sc = wg.shortcut_at(cur)
        if sc is not None:
            partner = sc[0]
            if partner != cur:
                c.portals.append(cur)
                c.portals.append(partner)
                c.jumped.append((cur, partner))
                if pop_dq:
                    wg.dq.discard(partner)
                if scan_mark:
                    tried[partner] = 1
                exit_last = wg.shortcut_at(partner)[1]
                prev, cur = partner, exit_last
                continue
            c.portals.append(cur)
        nxt, _ = wg.other_neighbor(cur, prev)
        prev, cur = cur, nxt
    if cur == start:
        return _WalkEnd("cycle", start, prev, count)
    return _WalkEnd("end", cur, prev, count)


def find_chain(wg: WorkGraph, v: int, *, allow=(), check_tried: bool = False,
               pop_dq: bool = False, scan_mark: bool = False) -> ChainDescriptor:
    """Identify the chain containing degree-2 vertex v.

    Walks both directions, following shortcuts over corridors already seen.
    Raises on a loop (cycle with a single attachment vertex)."""
    assert wg.curdeg[v] == 2, f"find_chain at {v} with degree {wg.curdeg[v]}"
    c = ChainDescriptor()
    if scan_mark:
        wg.tried[v] = 1
    if pop_dq:
        wg.dq.discard(v)
    sc = wg.shortcut_at(v)
    if sc is not None and sc[0] != v:
        partner = sc[0]
        c.portals.append(v)
        c.portals.append(partner)
        c.jumped.append((v, partner))
        if pop_dq:
            wg.dq.discard(partner)
        if scan_mark:
            wg.tried[partner] = 1
        end_a = _walk_direction(wg, v, sc[1], c, allow, check_tried, pop_dq, scan_mark)
        end_b = _walk_direction(wg, partner, wg.shortcut_at(partner)[1], c, allow,
                                check_tried, pop_dq, scan_mark)
        inner_base = 2
    else:
        if sc is not None:
            c.portals.append(v)
        incs = wg.incidences(v)
        end_a = _walk_direction(wg, v, incs[0][0], c, allow, check_tried, pop_dq,
                                scan_mark)
        if end_a.kind == "cycle":
            return _cycle_descriptor(wg, v, incs, c)
        end_b = _walk_direction(wg, v, incs[1][0], c, allow, check_tried, pop_dq,
                                scan_mark)
        inner_base = 1
    if end_a.kind == "tried" or end_b.kind == "tried":
        c.tried_hit = True
        return c
    assert end_a.kind == "end" and end_b.kind == "end"
    if end_a.endpoint == end_b.endpoint:
        raise NotOuterplanarSignal(LOOP_DETECTED)
    c.endpoint_a = end_a.endpoint
    c.endpoint_b = end_b.endpoint
    c.first_inner = end_a.last_inner
    c.last_inner = end_b.last_inner
    c.inner_count = end_a.count + end_b.count + inner_base
    c.is_good = min(wg.curdeg[c.endpoint_a], wg.curdeg[c.endpoint_b]) <= 4
    return c


def _cycle_descriptor(wg: WorkGraph, v: int, incs, c: ChainDescriptor) -> ChainDescriptor:
    """The whole remaining component is one cycle through v: endpoints are v
    and its lower-id neighbour, the closing edge the one between them."""
    (n1, h1), (n2, h2) = incs[0], incs[1]
    if n1 <= n2:
        w, closing = n1, h1
    else:
        w, closing = n2, h2
    c.is_cycle = True
    c.endpoint_a = v
    c.endpoint_b = w
    c.is_closed = True
    c.is_good = True
    c.closing = closing
    return c


def chain_is_closed(wg: WorkGraph, c: ChainDescriptor) -> bool:
    """Scan the lower-degree endpoint's live original slots for the other
    endpoint.  Artificial edges never close a chain.  Also rejects when the
    scanned endpoint touches three or more degree-2 vertices."""
    if c.is_cycle:
        return True
    a, b = c.endpoint_a, c.endpoint_b
    if wg.curdeg[b] < wg.curdeg[a]:
        a, b = b, a
    mask = wg.slot_masks[a]
    base = wg.offs[a]
    nbr = wg.nbr
    curdeg = wg.curdeg
    deg2 = 0
    closing = None
    while mask:
        low = mask & -mask
        s = base + low.bit_length() - 1
        x = nbr[s]
        if x == b:
            closing = s
        if curdeg[x] == 2:
            deg2 += 1
        mask ^= low
    if wg.has_aux[a]:
        a1, _, a2, _, _, _ = wg._record(a)
        if a1 and curdeg[a1] == 2:
            deg2 += 1
        if a2 and curdeg[a2] == 2:
            deg2 += 1
    if deg2 >= 3:
        raise NotOuterplanarSignal(THREE_DEGREE_TWO_NEIGHBORS)
    if closing is None:
        c.is_closed = False
        return False
    c.is_closed = True
    c.closing = closing
    return True


def _remove_chain_path(wg: WorkGraph, u: int, first_inner: int, w: int,
                       expanded: Optional[list]) -> None:
    """Remove the path u - first_inner - ... - w: every edge's counter is
    incremented and checked, inner vertices leave the graph, and obsolete
    aux records on the way are dropped."""
    cur = first_inner
    h = wg.find_handle(cur, u)
    if expanded is not None:
        _expand_into(wg, expanded, u, h, cur)
    wg.increment_path(h)
    wg.remove_edge(h)
    while cur != w:
        if wg.has_aux[cur]:
            wg.remove_shortcut_at(cur)
        incs = wg.incidences(cur)
        assert len(incs) == 1, f"inner vertex {cur} should have one edge left"
        nxt, h = incs[0]
        if expanded is not None:
            _expand_into(wg, expanded, cur, h, nxt)
        wg.increment_path(h)
        wg.remove_edge(h)
        wg.remove_vertex(cur)
        cur = nxt


def _expand_into(wg: WorkGraph, out: list, frm: int, h, to: int) -> None:
    """Trace helper: append the original-graph vertices that edge h stands
    for (interior of replaced chains included), ending with `to`."""
    if isinstance(h, int):
        out.append(to)
        return
    key = (frm, to) if frm < to else (to, frm)
    interior = wg._art_paths.get(key, ())
    if frm > to:
        interior = tuple(reversed(interior))
    out.extend(interior)
    out.append(to)


def remove_closed_chain(wg: WorkGraph, c: ChainDescriptor) -> tuple[int, int]:
    """Remove a closed chain (or cycle chain): increment and drop every
    chain edge, bump the closing edge's counter, and delete the inner
    vertices.  Returns the endpoints."""
    u, w = c.endpoint_a, c.endpoint_b
    expanded = [u] if wg.trace is not None else None
    if c.is_cycle:
        other, _ = wg.other_neighbor(u, w)
        if other == w:  # two-vertex cycle cannot happen in a simple graph
            raise AssertionError("degenerate cycle")
        _remove_chain_path(wg, u, other, w, expanded)
    else:
        _remove_chain_path(wg, u, c.first_inner, w, expanded)
    wg.increment_path(c.closing)
    if wg.trace is not None:
        wg.trace.append(("remove", u, w, tuple(expanded)))
    wg.final_edge = (u, w) if wg.edges_left == 1 else wg.final_edge
    return u, w


def replace_chain_with_artificial(wg: WorkGraph, c: ChainDescriptor) -> tuple[int, int, bool]:
    """Replace a good open chain by an artificial edge between its
    endpoints; if one already exists there, bump its counter instead.
    Returns (endpoints..., merged)."""
    u, w = c.endpoint_a, c.endpoint_b
    merged = wg.artificial_between(u, w)
    expanded = [u] if wg.trace is not None else None
    _remove_chain_path(wg, u, c.first_inner, w, expanded)
    if merged:
        wg.increment_path(("a", u, w))
    else:
        wg.add_artificial(u, w)
    if wg.trace is not None:
        key = (u, w) if u < w else (w, u)
        path = tuple(expanded)
        interior = path[1:-1] if u < w else tuple(reversed(path[1:-1]))
        if not merged:
            wg._art_paths[key] = interior
        wg.trace.append(("remove", u, w, path))
    return u, w, merged


def install_shortcut(wg: WorkGraph, c: ChainDescriptor) -> None:
    """Shortcut a not-good chain: obsolete portals inside it are dropped and
    its near-endpoint degree-2 vertices become the new portal pair."""
    for p in c.portals:
        wg.remove_shortcut_at(p)
    wg.add_shortcut(c.first_inner, c.last_inner, c.endpoint_a, c.endpoint_b)
