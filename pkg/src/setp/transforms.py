"""Constructive procedures: depot embedding, instance simplification, the
TSP gadget with its solution bijection, and seeded random generators."""

from __future__ import annotations

import numpy as np

from .core import AprioriOrder, OriginalInstance, SimplifiedInstance, canonicalize
from .graph import Multigraph, all_pairs_shortest_paths, is_eulerian

VertexMap = dict[int, int]


def default_epsilon(lengths) -> float:
    """1e-6 times the smallest positive length; 1e-6 if all lengths are zero."""
    positive = [float(d) for d in lengths if d > 0]
    return 1e-6 * min(positive) if positive else 1e-6


def embed_depot(g: Multigraph, dist, depot: int):
    """Duplicate the depot as a fresh vertex joined by two zero-length edges.

    Returns (graph, dist, new_depot). The new vertex has degree 2, so
    Eulerian-ness is preserved.
    """
    if depot not in g.adjacency:
        raise ValueError("depot %d is not a vertex of the graph" % depot)
    v0 = max(g.vertices) + 1
    edges = list(g.edges) + [(depot, v0), (depot, v0)]
    new_dist = [float(dist[e]) for e in range(len(g.edges))] + [0.0, 0.0]
    return Multigraph(g.vertices + (v0,), edges), tuple(new_dist), v0


def attach_depot_edge(order: AprioriOrder, n: int) -> AprioriOrder:
    """Lift an order over n original required edges to the simplified instance
    produced by `simplify`, whose matching carries the depot edge at index n.

    The a-posteriori tour leaves the depot before the first served edge, so
    the depot edge precedes the order cyclically.
    """
    if order.n != n:
        raise ValueError("order size %d != n = %d" % (order.n, n))
    return canonicalize(AprioriOrder((n,) + order.sequence, (0,) + order.orient))


def simplify(inst: OriginalInstance, epsilon: float | None = None):
    """Reduce an original instance to the order/orientation form.

    Every required-edge endpoint becomes its own vertex (shared endpoints
    split into co-located copies), plus a pair of depot copies joined by a
    probability-1 edge of length `epsilon`. Distances between copies are the
    host graph's shortest-path distances; the matched pair of required edge i
    keeps that edge's own length, so service cost is preserved exactly.

    Returns (SimplifiedInstance, VertexMap) with simplified vertex ids mapped
    back to original vertices. The matching keeps the order of
    `inst.required`, with the depot edge last.
    """
    if epsilon is None:
        epsilon = default_epsilon(inst.dist)
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    g = Multigraph.from_instance(inst)
    sp = all_pairs_shortest_paths(g, inst.dist)
    n = inst.n
    origin = []  # original vertex per simplified vertex
    for eid in inst.required:
        u, v = inst.edges[eid]
        origin.extend([u, v])
    origin.extend([inst.depot, inst.depot])
    size = 2 * (n + 1)
    idx = [g.index(v) for v in origin]
    D = sp[np.ix_(idx, idx)].copy()
    np.fill_diagonal(D, 0.0)
    for i, eid in enumerate(inst.required):
        D[2 * i, 2 * i + 1] = D[2 * i + 1, 2 * i] = float(inst.dist[eid])
    D[size - 2, size - 1] = D[size - 1, size - 2] = float(epsilon)
    R = tuple((2 * i, 2 * i + 1) for i in range(n + 1))
    p = np.append(np.asarray(inst.prob, dtype=float), 1.0)
    vmap: VertexMap = {i: v for i, v in enumerate(origin)}
    return SimplifiedInstance(D=D, R=R, p=p), vmap


class TspInstance:
    """Symmetric TSP cost matrix with zero diagonal."""

    def __init__(self, C):
        C = np.asarray(C, dtype=float)
        if C.ndim != 2 or C.shape[0] != C.shape[1]:
            raise ValueError("cost matrix must be square")
        if not np.array_equal(C, C.T):
            raise ValueError("cost matrix must be symmetric")
        if np.any(np.diag(C) != 0.0):
            raise ValueError("cost matrix diagonal must be zero")
        if np.any(C < 0):
            raise ValueError("costs must be nonnegative")
        C.setflags(write=False)
        self.C = C

    @property
    def m(self) -> int:
        return self.C.shape[0]

    def tour_cost(self, cities) -> float:
        cities = list(cities)
        return float(sum(self.C[cities[i], cities[(i + 1) % len(cities)]] for i in range(len(cities))))


def tsp_to_setp(tsp: TspInstance, epsilon: float):
    """Replace each city by two vertices at mutual distance epsilon, joined by
    a probability-1 required edge. Returns (SimplifiedInstance, VertexMap)."""
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    m = tsp.m
    if m < 3:
        raise ValueError("TSP gadget requires at least 3 cities, got %d" % m)
    city = np.arange(2 * m) // 2
    D = tsp.C[np.ix_(city, city)].copy()
    for i in range(m):
        D[2 * i, 2 * i + 1] = D[2 * i + 1, 2 * i] = float(epsilon)
    np.fill_diagonal(D, 0.0)
    R = tuple((2 * i, 2 * i + 1) for i in range(m))
    p = np.ones(m)
    vmap: VertexMap = {x: int(city[x]) for x in range(2 * m)}
    return SimplifiedInstance(D=D, R=R, p=p), vmap


def lift_to_tsp_tour(order: AprioriOrder, vmap: VertexMap) -> tuple[int, ...]:
    """Read the city sequence off a gadget-instance order.

    Both endpoints of a gadget edge map to the same city, so orientation
    drops out. Raises ValueError if the map is not gadget-shaped.
    """
    cities = []
    for i in order.sequence:
        a, b = vmap.get(2 * i), vmap.get(2 * i + 1)
        if a is None or a != b:
            raise ValueError("vertex map is not from a TSP gadget (edge %d)" % i)
        cities.append(a)
    if len(set(cities)) != len(cities):
        raise ValueError("vertex map is not from a TSP gadget (repeated city)")
    return tuple(cities)


def inject_tsp_tour(cities, m: int) -> AprioriOrder:
    """Natural injection of a city tour into a gadget-instance order.

    City i corresponds to required edge i; each edge is entered at its even
    copy (orientation 0).
    """
    cities = tuple(int(c) for c in cities)
    if sorted(cities) != list(range(m)):
        raise ValueError("city tour is not a permutation of 0..m-1")
    return canonicalize(AprioriOrder(cities, (0,) * m))


def canonical_city_tour(cities) -> tuple[int, ...]:
    """Canonical form of an undirected cyclic city tour: start at the smallest
    city, traverse toward the smaller of its two neighbors."""
    cities = list(cities)
    k = cities.index(min(cities))
    rot = cities[k:] + cities[:k]
    rev = [rot[0]] + rot[:0:-1]
    return tuple(rot if rot[1] <= rev[1] else rev)


def gen_random_eulerian(v: int, e: int, seed: int):
    """Random connected even-degree multigraph with uniform [0,1] lengths.

    Builds a random spanning tree plus extra edges up to `e`, then pairs the
    odd-degree vertices and duplicates the edges along shortest paths between
    them. The result has at least `e` edges. Returns (Multigraph, dist tuple).
    """
    if v < 3 or e < v:
        raise ValueError("need v >= 3 and e >= v (got v=%d, e=%d)" % (v, e))
    rng = np.random.default_rng(seed)
    edges: list[tuple[int, int]] = []
    perm = rng.permutation(v)
    for i in range(1, v):
        a = int(perm[rng.integers(0, i)])
        edges.append((min(a, int(perm[i])), max(a, int(perm[i]))))
    while len(edges) < e:
        a, b = rng.integers(0, v, size=2)
        if a != b:
            edges.append((min(int(a), int(b)), max(int(a), int(b))))
    dist = [float(x) for x in rng.random(len(edges))]
    g = Multigraph(range(v), edges)
    odd = [u for u in g.vertices if g.degree(u) % 2 == 1]
    if odd:
        sp = all_pairs_shortest_paths(g, dist)
        # greedy pairing: closest remaining partner, duplicate a shortest path
        rng.shuffle(odd)
        while odd:
            a = odd.pop()
            b = min(odd, key=lambda u: (sp[g.index(a), g.index(u)], u))
            odd.remove(b)
            for eid in _shortest_path_edges(g, dist, a, b):
                edges.append(g.edges[eid])
                dist.append(dist[eid])
        g = Multigraph(range(v), edges)
    assert is_eulerian(g)
    return g, tuple(dist)


def _shortest_path_edges(g: Multigraph, dist, a: int, b: int) -> list[int]:
    """Edge ids along one shortest a-b path (Dijkstra, smallest-id ties)."""
    import heapq

    best = {a: (0.0, -1, -1)}  # vertex -> (dist, via edge, from vertex)
    heap = [(0.0, a)]
    while heap:
        d, u = heapq.heappop(heap)
        if d > best[u][0]:
            continue
        if u == b:
            break
        for eid, w in g.adjacency[u]:
            nd = d + dist[eid]
            if w not in best or nd < best[w][0]:
                best[w] = (nd, eid, u)
                heapq.heappush(heap, (nd, w))
    path = []
    u = b
    while u != a:
        _, eid, prev = best[u]
        path.append(eid)
        u = prev
    path.reverse()
    return path


def gen_random_original(v: int, e: int, n_required: int, seed: int) -> OriginalInstance:
    """Random valid OriginalInstance: random Eulerian graph, embedded depot,
    random required subset with uniform probabilities."""
    g, dist = gen_random_eulerian(v, e, seed)
    rng = np.random.default_rng(np.random.SeedSequence(entropy=seed).spawn(1)[0])
    depot = int(rng.integers(0, v))
    g, dist, v0 = embed_depot(g, dist, depot)
    m = len(g.edges)
    if not 1 <= n_required <= m:
        raise ValueError("n_required must be in 1..%d" % m)
    required = tuple(int(i) for i in sorted(rng.choice(m - 2, size=n_required, replace=False)))
    prob = tuple(float(x) for x in rng.random(n_required))
    return OriginalInstance(
        vertices=g.vertices,
        edges=g.edges,
        dist=dist,
        depot=v0,
        required=required,
        prob=prob,
    )


def gen_random_simplified(n: int, seed: int, metric: bool = False) -> SimplifiedInstance:
    """Random simplified instance over 2n vertices; optional metric closure."""
    if n < 1:
        raise ValueError("n must be >= 1")
    rng = np.random.default_rng(seed)
    size = 2 * n
    A = rng.random((size, size))
    D = np.triu(A, 1)
    D = D + D.T
    if metric:
        from scipy.sparse.csgraph import csgraph_from_dense, shortest_path

        full = np.where(np.eye(size, dtype=bool), np.inf, D)
        D = shortest_path(csgraph_from_dense(full, null_value=np.inf), method="D", directed=False)
    R = tuple((2 * i, 2 * i + 1) for i in range(n))
    p = rng.random(n)
    return SimplifiedInstance(D=D, R=R, p=p)


def gen_random_tsp(m: int, seed: int) -> TspInstance:
    """Random symmetric TSP cost matrix with uniform [0,1] costs."""
    if m < 3:
        raise ValueError("m must be >= 3")
    rng = np.random.default_rng(seed)
    A = rng.random((m, m))
    C = np.triu(A, 1)
    return TspInstance(C + C.T)
