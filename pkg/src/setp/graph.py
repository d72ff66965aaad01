"""Multigraph algorithms: Eulerian test, tour construction, shortest paths."""

from __future__ import annotations

from scipy.sparse.csgraph import csgraph_from_dense, shortest_path

import numpy as np

from .core import Edge, EulerianTour, OriginalInstance


class Multigraph:
    """Undirected multigraph with stable integer edge ids.

    Parallel edges are allowed and distinguished by id; self-loops are
    rejected. Adjacency lists are kept sorted by edge id so that traversal
    algorithms are deterministic.
    """

    def __init__(self, vertices, edges):
        self.vertices: tuple[int, ...] = tuple(sorted(set(int(v) for v in vertices)))
        self.edges: tuple[Edge, ...] = tuple((int(u), int(v)) for u, v in edges)
        self._index = {v: i for i, v in enumerate(self.vertices)}
        adj: dict[int, list[tuple[int, int]]] = {v: [] for v in self.vertices}
        for eid, (u, v) in enumerate(self.edges):
            if u == v:
                raise ValueError("self-loop at edge %d (vertex %d)" % (eid, u))
            if u not in adj or v not in adj:
                raise ValueError("edge %d references unknown vertex" % eid)
            adj[u].append((eid, v))
            adj[v].append((eid, u))
        self.adjacency = {v: sorted(lst) for v, lst in adj.items()}

    @classmethod
    def from_instance(cls, inst: OriginalInstance) -> "Multigraph":
        return cls(inst.vertices, inst.edges)

    def index(self, v: int) -> int:
        return self._index[v]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])


def is_eulerian(g: Multigraph) -> bool:
    """True iff every nonzero-degree vertex has even degree and they are connected."""
    active = [v for v in g.vertices if g.degree(v) > 0]
    if not active:
        return False
    if any(g.degree(v) % 2 for v in active):
        return False
    seen = {active[0]}
    stack = [active[0]]
    while stack:
        for _, w in g.adjacency[stack.pop()]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return all(v in seen for v in active)


def hierholzer(g: Multigraph, start: int) -> EulerianTour:
    """Build an Eulerian tour from `start`, taking the smallest unused edge id first.

    Deterministic for a given edge-id ordering. Raises ValueError on
    non-Eulerian input.
    """
    if not is_eulerian(g):
        raise ValueError("graph is not Eulerian")
    if g.degree(start) == 0:
        raise ValueError("start vertex %d has no edges" % start)
    used = [False] * len(g.edges)
    cursor = {v: 0 for v in g.vertices}
    # stack entries: (vertex, step taken to reach it); classic splice-free variant
    stack: list[tuple[int, tuple[int, int] | None]] = [(start, None)]
    out: list[tuple[int, int]] = []
    while stack:
        v, _ = stack[-1]
        lst = g.adjacency[v]
        i = cursor[v]
        while i < len(lst) and used[lst[i][0]]:
            i += 1
        cursor[v] = i
        if i < len(lst):
            eid, w = lst[i]
            used[eid] = True
            direction = 0 if g.edges[eid][0] == v else 1
            stack.append((w, (eid, direction)))
        else:
            _, step = stack.pop()
            if step is not None:
                out.append(step)
    out.reverse()
    return EulerianTour(tuple(out))


def all_eulerian_tours(g: Multigraph, start: int, max_edges: int = 12):
    """Yield every Eulerian tour of `g` starting and ending at `start`.

    Exhaustive DFS; guarded to small graphs.
    """
    m = len(g.edges)
    if m > max_edges:
        raise ValueError("tour enumeration limited to %d edges, got %d" % (max_edges, m))
    if not is_eulerian(g):
        raise ValueError("graph is not Eulerian")
    used = [False] * m
    steps: list[tuple[int, int]] = []

    def walk(v):
        if len(steps) == m:
            if v == start:
                yield EulerianTour(tuple(steps))
            return
        for eid, w in g.adjacency[v]:
            if not used[eid]:
                used[eid] = True
                steps.append((eid, 0 if g.edges[eid][0] == v else 1))
                yield from walk(w)
                steps.pop()
                used[eid] = False

    yield from walk(start)


def all_pairs_shortest_paths(g: Multigraph, dist) -> np.ndarray:
    """Shortest-path distance matrix over g.vertices (in sorted-vertex order).

    `dist` maps edge id to a nonnegative length. Unreachable pairs come out
    as +inf (impossible for Eulerian inputs).
    """
    k = len(g.vertices)
    W = np.full((k, k), np.inf)
    np.fill_diagonal(W, 0.0)
    for eid, (u, v) in enumerate(g.edges):
        d = float(dist[eid])
        if d < 0:
            raise ValueError("negative length on edge %d" % eid)
        i, j = g.index(u), g.index(v)
        if d < W[i, j]:
            W[i, j] = W[j, i] = d
    # inf marks "no edge" so that zero-length edges survive the conversion
    M = shortest_path(csgraph_from_dense(W, null_value=np.inf), method="D", directed=False)
    return M
