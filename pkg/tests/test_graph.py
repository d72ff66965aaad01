import itertools

import numpy as np
import pytest

from setp.core import EulerianTour, OriginalInstance, validate_tour
from setp.graph import (
    Multigraph,
    all_eulerian_tours,
    all_pairs_shortest_paths,
    hierholzer,
    is_eulerian,
)
from setp.transforms import gen_random_eulerian


def brute_force_shortest(g, dist, s, t):
    """Oracle: minimum over all simple s-t paths by DFS enumeration."""
    best = 0.0 if s == t else np.inf

    def walk(v, seen, acc):
        nonlocal best
        if v == t:
            best = min(best, acc)
            return
        for eid, w in g.adjacency[v]:
            if w not in seen:
                walk(w, seen | {w}, acc + dist[eid])

    if s != t:
        walk(s, {s}, 0.0)
    return best


class TestIsEulerian:
    def test_k3(self):
        assert is_eulerian(Multigraph(range(3), [(0, 1), (1, 2), (0, 2)]))

    def test_k4_odd_degrees(self):
        edges = list(itertools.combinations(range(4), 2))
        assert not is_eulerian(Multigraph(range(4), edges))

    def test_disjoint_triangles(self):
        edges = [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]
        assert not is_eulerian(Multigraph(range(6), edges))

    def test_self_loop_rejected(self):
        with pytest.raises(ValueError):
            Multigraph(range(2), [(0, 0), (0, 1), (0, 1)])


class TestHierholzer:
    def test_k3_smallest_id_rule(self):
        g = Multigraph(range(3), [(0, 1), (1, 2), (0, 2)])
        tour = hierholzer(g, 0)
        assert tour == EulerianTour(((0, 0), (1, 0), (2, 1)))

    def test_doubled_edge(self):
        g = Multigraph(range(2), [(0, 1), (0, 1)])
        tour = hierholzer(g, 0)
        assert tour == EulerianTour(((0, 0), (1, 1)))

    def test_non_eulerian_rejected(self):
        with pytest.raises(ValueError):
            hierholzer(Multigraph(range(3), [(0, 1), (1, 2)]), 0)

    @pytest.mark.parametrize("seed", range(10))
    def test_random_graph_tour_valid(self, seed):
        g, dist = gen_random_eulerian(5, 10, seed)
        tour = hierholzer(g, 0)
        inst = OriginalInstance(
            vertices=g.vertices,
            edges=g.edges,
            dist=dist,
            depot=0,
            required=(0,),
            prob=(1.0,),
        )
        assert validate_tour(tour, inst) == []


class TestAllEulerianTours:
    def test_every_tour_valid_and_distinct(self):
        g = Multigraph(range(3), [(0, 1), (1, 2), (0, 2), (0, 1), (1, 2), (0, 2)])
        inst = OriginalInstance(
            vertices=g.vertices, edges=g.edges, dist=(1.0,) * 6, depot=0,
            required=(0,), prob=(1.0,),
        )
        tours = list(all_eulerian_tours(g, 0))
        assert len(tours) == len(set(tours)) > 1
        for t in tours:
            assert validate_tour(t, inst) == []


class TestShortestPaths:
    def test_triangle_shortcut(self):
        g = Multigraph(range(3), [(0, 1), (1, 2), (0, 2)])
        M = all_pairs_shortest_paths(g, [1.0, 1.0, 5.0])
        assert M[0, 2] == 2.0
        assert M[0, 1] == 1.0

    def test_all_zero_lengths(self):
        g = Multigraph(range(3), [(0, 1), (1, 2), (0, 2)])
        M = all_pairs_shortest_paths(g, [0.0, 0.0, 0.0])
        assert np.all(M == 0.0)

    @pytest.mark.parametrize("seed", range(8))
    def test_matches_simple_path_enumeration(self, seed):
        g, dist = gen_random_eulerian(5, 8, seed)
        M = all_pairs_shortest_paths(g, dist)
        for s in g.vertices:
            for t in g.vertices:
                expect = brute_force_shortest(g, dist, s, t)
                assert M[g.index(s), g.index(t)] == pytest.approx(expect, abs=1e-12)

    @pytest.mark.parametrize("seed", range(5))
    def test_symmetric_zero_diagonal_triangle_inequality(self, seed):
        g, dist = gen_random_eulerian(6, 9, seed)
        M = all_pairs_shortest_paths(g, dist)
        assert np.allclose(M, M.T)
        assert np.all(np.diag(M) == 0.0)
        k = len(g.vertices)
        for i in range(k):
            for j in range(k):
                for h in range(k):
                    assert M[i, j] <= M[i, h] + M[h, j] + 1e-12
