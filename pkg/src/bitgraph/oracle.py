"""Unrestricted-space reference algorithms and graph generators.

Everything here favours being obviously correct over being fast or
space-frugal: mutable adjacency sets, vertex-removal connectivity checks,
a classical lowpoint block decomposition, and a degree-two reduction for
outerplanarity.  None of it is metered by the space ledger.

All randomness is drawn from numpy's PCG64 so corpora are reproducible
from a 64-bit seed.
"""

from __future__ import annotations

import math
from collections import defaultdict
from enum import Enum
from typing import Iterable, Iterator

import numpy as np

from .graph import Graph, graph_from_edges


class Verdict(Enum):
    NOT_OUTERPLANAR = "NOT_OUTERPLANAR"
    OUTERPLANAR = "OUTERPLANAR"
    MAXIMAL_OUTERPLANAR = "MAXIMAL_OUTERPLANAR"


class MutableGraph:
    """Simple undirected graph on adjacency sets; supports vertex deletion."""

    def __init__(self, vertices: Iterable[int] = (), edges: Iterable[tuple[int, int]] = ()):
        self.adj: dict[int, set[int]] = {v: set() for v in vertices}
        for u, v in edges:
            self.add_edge(u, v)

    @classmethod
    def from_graph(cls, g: Graph) -> "MutableGraph":
        mg = cls(range(1, g.n + 1))
        for u, v in g.edges():
            mg.add_edge(u, v)
        return mg

    def add_edge(self, u: int, v: int) -> None:
        if u == v:
            raise ValueError("self-loop")
        self.adj.setdefault(u, set()).add(v)
        self.adj.setdefault(v, set()).add(u)

    def remove_vertex(self, v: int) -> None:
        for w in self.adj.pop(v):
            self.adj[w].discard(v)

    def edge_count(self) -> int:
        return sum(len(s) for s in self.adj.values()) // 2

    def component_count(self) -> int:
        seen: set[int] = set()
        comps = 0
        for s in self.adj:
            if s in seen:
                continue
            comps += 1
            stack = [s]
            seen.add(s)
            while stack:
                x = stack.pop()
                for y in self.adj[x]:
                    if y not in seen:
                        seen.add(y)
                        stack.append(y)
        return comps


def oracle_cut_vertices(g: Graph) -> list[int]:
    """v is a cut vertex iff deleting v increases the component count
    among the remaining vertices."""
    if g.n == 0:
        return []
    whole = MutableGraph.from_graph(g).component_count()
    out = []
    for v in range(1, g.n + 1):
        mg = MutableGraph.from_graph(g)
        mg.remove_vertex(v)
        if mg.component_count() > whole:
            out.append(v)
    return out


def oracle_bcc(g: Graph) -> list[frozenset[frozenset[int]]]:
    """Edge partition into biconnected components (iterative lowpoint)."""
    adj: dict[int, list[int]] = defaultdict(list)
    for u, v in g.edges():
        adj[u].append(v)
        adj[v].append(u)
    disc: dict[int, int] = {}
    low: dict[int, int] = {}
    comps: list[frozenset[frozenset[int]]] = []
    counter = 0
    for root in range(1, g.n + 1):
        if root in disc or not adj[root]:
            continue
        estack: list[tuple[int, int]] = []
        disc[root] = low[root] = counter = counter + 1
        work: list[tuple[int, int | None, Iterator[int]]] = [(root, None, iter(adj[root]))]
        parent_edge_used: dict[int, bool] = {root: False}
        while work:
            v, parent, it = work[-1]
            advanced = False
            for w in it:
                if w == parent and not parent_edge_used[v]:
                    parent_edge_used[v] = True
                    continue
                if w not in disc:
                    estack.append((v, w))
                    counter += 1
                    disc[w] = low[w] = counter
                    parent_edge_used[w] = False
                    work.append((w, v, iter(adj[w])))
                    advanced = True
                    break
                if disc[w] < disc[v]:
                    estack.append((v, w))
                    low[v] = min(low[v], disc[w])
            if advanced:
                continue
            work.pop()
            if work:
                u = work[-1][0]
                low[u] = min(low[u], low[v])
                if low[v] >= disc[u]:
                    block: set[frozenset[int]] = set()
                    while True:
                        x, y = estack.pop()
                        block.add(frozenset((x, y)))
                        if {x, y} == {u, v}:
                            break
                    comps.append(frozenset(block))
    return comps


def _reduce_component(vertices: set[int], edges: set[frozenset[int]]) -> bool:
    """Degree-two reduction with removed-path counters.

    A vertex of degree 2 is deleted and the pair of its neighbours gains one
    removed internally-disjoint path of length >= 2; more than two such
    paths between any adjacent pair refutes outerplanarity, as does getting
    stuck with minimum degree >= 3."""
    n = len(vertices)
    m = len(edges)
    if n < 3:
        return True
    if m > 2 * n - 3:
        return False
    adj: dict[int, set[int]] = {v: set() for v in vertices}
    for e in edges:
        x, y = tuple(e)
        adj[x].add(y)
        adj[y].add(x)
    paths: dict[frozenset[int], int] = defaultdict(int)
    live = set(vertices)
    while len(live) > 2:
        v = next((x for x in sorted(live) if len(adj[x]) == 2), None)
        if v is None:
            return False
        a, b = tuple(adj[v])
        adj[a].discard(v)
        adj[b].discard(v)
        live.discard(v)
        pair = frozenset((a, b))
        paths[pair] += 1
        if paths[pair] > 2:
            return False
        if b not in adj[a]:
            adj[a].add(b)
            adj[b].add(a)
    return True


def oracle_outerplanar(g: Graph) -> Verdict:
    if not _edge_bound_ok(g.n, g.m):
        return Verdict.NOT_OUTERPLANAR
    for block in oracle_bcc(g):
        verts = {x for e in block for x in e}
        if not _reduce_component(verts, set(block)):
            return Verdict.NOT_OUTERPLANAR
    return Verdict.MAXIMAL_OUTERPLANAR if _is_maximal(g.n, g.m) else Verdict.OUTERPLANAR


def _edge_bound_ok(n: int, m: int) -> bool:
    if n <= 1:
        return m == 0
    return m <= 2 * n - 3


def _is_maximal(n: int, m: int) -> bool:
    if n == 0 or (n == 1 and m == 0) or (n == 2 and m == 1):
        return True
    return n >= 3 and m == 2 * n - 3


# -- generators -----------------------------------------------------------


def _decode_pair(codes: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Map pair codes k in [0, C(n,2)) to 0-based pairs (lo, hi), hi > lo.

    The code of (lo, hi) is hi*(hi-1)/2 + lo."""
    hi = ((1.0 + np.sqrt(1.0 + 8.0 * codes.astype(np.float64))) / 2.0).astype(np.int64)
    # float sqrt can be off by one near triangular numbers; fix exactly
    hi -= hi * (hi - 1) // 2 > codes
    hi += (hi + 1) * hi // 2 <= codes
    lo = codes - hi * (hi - 1) // 2
    return lo, hi


def _sample_pair_codes(rng: np.random.Generator, maxm: int, m: int,
                       exclude: np.ndarray | None = None) -> np.ndarray:
    chosen = np.empty(0, dtype=np.int64)
    while chosen.size < m:
        need = m - chosen.size
        draw = rng.integers(0, maxm, size=need + need // 4 + 16, dtype=np.int64)
        chosen = np.unique(np.concatenate((chosen, draw)))
        if exclude is not None and exclude.size:
            chosen = chosen[~np.isin(chosen, exclude)]
    if chosen.size > m:
        keep = rng.permutation(chosen.size)[:m]
        chosen = chosen[np.sort(keep)]
    return chosen


def gen_gnm(n: int, m: int, seed: int) -> Graph:
    """Uniform simple graph with n vertices and m edges."""
    maxm = n * (n - 1) // 2
    if not 0 <= m <= maxm:
        raise ValueError(f"m={m} infeasible for n={n} (max {maxm})")
    rng = np.random.default_rng(seed)
    lo, hi = _decode_pair(_sample_pair_codes(rng, maxm, m))
    edges = np.stack([lo + 1, hi + 1], axis=1)
    return graph_from_edges(n, edges)


def gen_connected(n: int, m: int, seed: int) -> Graph:
    """Random connected graph: a random attachment tree plus extra edges."""
    if n < 1:
        raise ValueError("need at least one vertex")
    maxm = n * (n - 1) // 2
    if not n - 1 <= m <= maxm:
        raise ValueError(f"m={m} infeasible for connected n={n}")
    rng = np.random.default_rng(seed)
    if n == 1:
        return graph_from_edges(1, [])
    children = np.arange(2, n + 1, dtype=np.int64)
    parents = rng.integers(1, children)
    tree_codes = (children - 1) * (children - 2) // 2 + (parents - 1)
    extra_codes = _sample_pair_codes(rng, maxm, m - (n - 1), exclude=np.sort(tree_codes))
    lo, hi = _decode_pair(extra_codes)
    edges = np.concatenate([
        np.stack([parents, children], axis=1),
        np.stack([lo + 1, hi + 1], axis=1),
    ])
    return graph_from_edges(n, edges)


def gen_mop(n: int, seed: int) -> Graph:
    """Random maximal outerplanar graph: the cycle 1..n plus n-3 chords from
    recursively splitting the polygon at a random apex."""
    if n < 3:
        raise ValueError("maximal outerplanar generation needs n >= 3")
    rng = np.random.default_rng(seed)
    edges = [(i, i + 1) for i in range(1, n)] + [(1, n)]
    stack = [(1, n)]
    while stack:
        a, b = stack.pop()
        if b - a < 2:
            continue
        k = int(rng.integers(a + 1, b))
        if k - a >= 2:
            edges.append((a, k))
        if b - k >= 2:
            edges.append((k, b))
        stack.append((a, k))
        stack.append((k, b))
    return graph_from_edges(n, edges)


def path_graph(n: int) -> Graph:
    return graph_from_edges(n, [(i, i + 1) for i in range(1, n)])


def lollipop_graph(clique: int, tail: int) -> Graph:
    """A clique with a path of `tail` extra vertices hanging off vertex 1."""
    edges = [(i, j) for i in range(1, clique + 1) for j in range(i + 1, clique + 1)]
    prev = 1
    for t in range(clique + 1, clique + tail + 1):
        edges.append((prev, t))
        prev = t
    return graph_from_edges(clique + tail, edges)


def iter_labeled_graphs(n: int, max_edges: int | None = None,
                        connected_only: bool = False) -> Iterator[list[tuple[int, int]]]:
    """All labeled simple graphs on vertices 1..n as edge lists."""
    pairs = [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
    np_pairs = len(pairs)
    for mask in range(1 << np_pairs):
        if max_edges is not None and mask.bit_count() > max_edges:
            continue
        edges = [pairs[i] for i in range(np_pairs) if mask >> i & 1]
        if connected_only and not _mask_connected(n, edges):
            continue
        yield edges


def _mask_connected(n: int, edges: list[tuple[int, int]]) -> bool:
    if n <= 1:
        return True
    adj = [0] * (n + 1)
    for u, v in edges:
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    seen = 1 << 1
    frontier = [1]
    while frontier:
        x = frontier.pop()
        nbrs = adj[x] & ~seen
        while nbrs:
            low = nbrs & -nbrs
            y = low.bit_length() - 1
            seen |= low
            frontier.append(y)
            nbrs ^= low
    return all(seen >> v & 1 for v in range(1, n + 1))
