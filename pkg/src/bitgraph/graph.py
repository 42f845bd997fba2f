"""Read-only input graphs in adjacency-array form with mate indices.

A graph over vertices 1..n is stored as a flat neighbour array indexed by
per-vertex offsets.  The mate of slot i at vertex v is the slot of the same
edge on the other endpoint, so either side of an edge reaches the other in
constant time.  Adjacency order is input edge order, which pins down every
DFS in the package.  Graphs are immutable after construction and are never
counted by the space ledger.
"""

from __future__ import annotations

import io
from typing import Iterable, NamedTuple

import numpy as np

from .errors import (DuplicateEdgeError, IdOutOfRangeError,
                     MalformedInputError, SelfLoopError)


class EdgeRef(NamedTuple):
    """An edge named by one endpoint and a 1-based slot in its adjacency array."""
    vertex: int
    slot: int


class Graph:
    def __init__(self, n: int, edge_u: np.ndarray, edge_v: np.ndarray):
        self.n = int(n)
        self.m = int(edge_u.size)
        self.edge_u = edge_u
        self.edge_v = edge_v

        both = np.concatenate((edge_u, edge_v))
        deg = np.bincount(both, minlength=n + 2).astype(np.int64)
        deg[0] = 0
        self.offsets = np.zeros(n + 2, dtype=np.int64)
        np.cumsum(deg[1:n + 1], out=self.offsets[2:])
        # interleave the two directions of each edge so that per-vertex
        # adjacency order equals input edge order after a stable sort
        m = self.m
        src = np.empty(2 * m, dtype=np.int32)
        dst = np.empty(2 * m, dtype=np.int32)
        src[0::2] = edge_u
        src[1::2] = edge_v
        dst[0::2] = edge_v
        dst[1::2] = edge_u
        perm = np.argsort(src, kind="stable")
        inv = np.empty(2 * m, dtype=np.int64)
        inv[perm] = np.arange(2 * m)
        self.neighbors = dst[perm]
        self.mates = np.empty(2 * m, dtype=np.int32)
        pos_u = inv[0::2]
        pos_v = inv[1::2]
        self.mates[pos_u] = (pos_v - self.offsets[edge_v]).astype(np.int32)
        self.mates[pos_v] = (pos_u - self.offsets[edge_u]).astype(np.int32)
        # slot of edge j in the adjacency array of its first endpoint
        self.edge_slot_u = (pos_u - self.offsets[edge_u]).astype(np.int32)
        eid = np.empty(2 * m, dtype=np.int32)
        eid[0::2] = np.arange(m, dtype=np.int32)
        eid[1::2] = np.arange(m, dtype=np.int32)
        self.slot_edge = eid[perm]
        self._lists: tuple[list, list, list, list] | None = None

    # -- constant-time accessors (1-based vertices and slots) ------------

    def degree(self, v: int) -> int:
        self._check_vertex(v)
        return int(self.offsets[v + 1] - self.offsets[v])

    def neighbor(self, v: int, i: int) -> int:
        self._check_slot(v, i)
        return int(self.neighbors[self.offsets[v] + i - 1])

    def mate(self, v: int, i: int) -> int:
        """Slot j such that neighbor(neighbor(v,i), j) == v."""
        self._check_slot(v, i)
        return int(self.mates[self.offsets[v] + i - 1]) + 1

    def _check_vertex(self, v: int) -> None:
        if not 1 <= v <= self.n:
            raise ValueError(f"vertex {v} out of range 1..{self.n}")

    def _check_slot(self, v: int, i: int) -> None:
        self._check_vertex(v)
        if not 1 <= i <= self.degree(v):
            raise ValueError(f"slot {i} out of range 1..{self.degree(v)} at vertex {v}")

    def edges(self) -> Iterable[tuple[int, int]]:
        return zip(self.edge_u.tolist(), self.edge_v.tolist())

    def adjacency_lists(self) -> tuple[list, list, list, list]:
        """(offsets, neighbors, mates, slot_edge) as plain lists for tight loops."""
        if self._lists is None:
            self._lists = (self.offsets.tolist(), self.neighbors.tolist(),
                           self.mates.tolist(), self.slot_edge.tolist())
        return self._lists

    def to_edge_list(self) -> str:
        lines = [f"{self.n} {self.m}"]
        lines.extend(f"{u} {v}" for u, v in self.edges())
        return "\n".join(lines) + "\n"


def _validate_edges(n: int, eu: np.ndarray, ev: np.ndarray,
                    lines: np.ndarray | None) -> None:
    def line_of(i: int) -> int | None:
        return int(lines[i]) if lines is not None else None

    bad = np.nonzero((eu < 1) | (eu > n) | (ev < 1) | (ev > n))[0]
    if bad.size:
        i = int(bad[0])
        raise IdOutOfRangeError(
            f"edge ({int(eu[i])}, {int(ev[i])}) has endpoint outside 1..{n}", line_of(i))
    loops = np.nonzero(eu == ev)[0]
    if loops.size:
        i = int(loops[0])
        raise SelfLoopError(f"self-loop at vertex {int(eu[i])}", line_of(i))
    lo = np.minimum(eu, ev).astype(np.int64)
    hi = np.maximum(eu, ev).astype(np.int64)
    code = lo * (n + 1) + hi
    order = np.argsort(code, kind="stable")
    dup = np.nonzero(np.diff(code[order]) == 0)[0]
    if dup.size:
        i = int(order[dup[0] + 1])
        raise DuplicateEdgeError(
            f"duplicate edge ({int(eu[i])}, {int(ev[i])})", line_of(i))


def graph_from_edges(n: int, edges: Iterable[tuple[int, int]] | np.ndarray) -> Graph:
    if n < 0:
        raise MalformedInputError(f"negative vertex count {n}")
    arr = np.asarray(list(edges) if not isinstance(edges, np.ndarray) else edges,
                     dtype=np.int64)
    if arr.size == 0:
        arr = arr.reshape(0, 2)
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise MalformedInputError("edges must be pairs")
    eu = arr[:, 0].astype(np.int32)
    ev = arr[:, 1].astype(np.int32)
    _validate_edges(n, eu, ev, None)
    return Graph(n, eu, ev)


def parse_graph(text) -> Graph:
    """Parse the edge-list format: header "n m", then m pairs "u v".

    Lines beginning with '#' are ignored.  Vertices are 1-based."""
    if hasattr(text, "read"):
        text = text.read()
    if isinstance(text, bytes):
        text = text.decode()

    numbers: list[int] = []
    line_nos: list[int] = []
    for lineno, line in enumerate(io.StringIO(text), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        for token in stripped.split():
            try:
                numbers.append(int(token))
            except ValueError:
                raise MalformedInputError(f"not an integer: {token!r}", lineno) from None
            line_nos.append(lineno)

    if len(numbers) < 2:
        raise MalformedInputError("missing 'n m' header", 1)
    n, m = numbers[0], numbers[1]
    if n < 0 or m < 0:
        raise MalformedInputError(f"negative header values n={n} m={m}", line_nos[0])
    if len(numbers) != 2 + 2 * m:
        raise MalformedInputError(
            f"expected {2 * m} endpoint values after header, found {len(numbers) - 2}",
            line_nos[-1] if numbers else 1)
    if m == 0:
        return Graph(n, np.empty(0, dtype=np.int32), np.empty(0, dtype=np.int32))
    vals = np.asarray(numbers[2:], dtype=np.int64)
    eu = vals[0::2].astype(np.int32)
    ev = vals[1::2].astype(np.int32)
    lines = np.asarray(line_nos[2:], dtype=np.int64)[0::2]
    _validate_edges(n, eu, ev, lines)
    return Graph(n, eu, ev)
