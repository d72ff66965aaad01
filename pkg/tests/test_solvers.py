import numpy as np
import pytest

from setp.core import AprioriOrder, SimplifiedInstance, canonicalize, validate_simplified
from setp.evaluate import expected_cost_closed_form
from setp.solvers import brute_force, brute_force_tsp, local_search, nearest_neighbor
from setp.transforms import gen_random_simplified


class TestBruteForce:
    def test_single_edge_formula(self):
        D = np.array([[0.0, 2.5], [2.5, 0.0]])
        inst = SimplifiedInstance(D=D, R=[(0, 1)], p=[0.3])
        res = brute_force(inst)
        assert res.cost.value == pytest.approx(0.3 * 2 * 2.5)
        assert res.order.sequence == (0,)

    def test_two_edges_orientation_classes(self):
        inst = gen_random_simplified(2, seed=0)
        res = brute_force(inst)
        # order is unique up to rotation; optimum over the 4 orientation combos
        candidates = [
            expected_cost_closed_form(AprioriOrder((0, 1), (a, b)), inst).value
            for a in (0, 1)
            for b in (0, 1)
        ]
        assert res.cost.value == pytest.approx(min(candidates), rel=1e-12)

    def test_guard(self):
        inst = gen_random_simplified(5, seed=0)
        with pytest.raises(ValueError, match="guard"):
            brute_force(inst, max_n=4)

    def test_cost_matches_reevaluation(self):
        inst = gen_random_simplified(5, seed=7)
        res = brute_force(inst)
        assert res.cost.value == expected_cost_closed_form(res.order, inst).value

    @pytest.mark.parametrize("seed", range(5))
    def test_invariant_under_vertex_relabeling(self, seed):
        inst = gen_random_simplified(4, seed=seed)
        rng = np.random.default_rng(seed + 50)
        perm = rng.permutation(inst.size)
        D2 = inst.D[np.ix_(perm, perm)]
        inv = np.argsort(perm)
        R2 = tuple((int(inv[u]), int(inv[v])) for u, v in inst.R)
        relabeled = SimplifiedInstance(D=D2, R=R2, p=inst.p)
        assert validate_simplified(relabeled) == []
        a = brute_force(inst)
        b = brute_force(relabeled)
        assert a.cost.value == pytest.approx(b.cost.value, rel=1e-12)


class TestNearestNeighbor:
    def test_single_edge(self):
        D = np.array([[0.0, 1.0], [1.0, 0.0]])
        inst = SimplifiedInstance(D=D, R=[(0, 1)], p=[0.5])
        assert nearest_neighbor(inst) == AprioriOrder((0,), (0,))

    def test_valid_permutation(self):
        inst = gen_random_simplified(7, seed=13)
        order = nearest_neighbor(inst, start_edge=2)
        assert sorted(order.sequence) == list(range(7))
        assert all(o in (0, 1) for o in order.orient)

    def test_collinear_chain_is_optimal(self):
        # edges laid end to end on a line: 0-1 at [0,1], 2-3 at [2,3], 4-5 at [4,5]
        pts = np.array([0.0, 1.0, 2.0, 3.0, 4.0, 5.0])
        D = np.abs(pts[:, None] - pts[None, :])
        inst = SimplifiedInstance(D=D, R=[(0, 1), (2, 3), (4, 5)], p=[1.0, 1.0, 1.0])
        greedy = nearest_neighbor(inst)
        exact = brute_force(inst)
        assert expected_cost_closed_form(greedy, inst).value == pytest.approx(
            exact.cost.value, rel=1e-12
        )


class TestLocalSearch:
    def test_returns_init_when_optimal(self):
        inst = gen_random_simplified(5, seed=17)
        opt = brute_force(inst)
        res = local_search(inst, opt.order, seed=0)
        assert res.cost.value == pytest.approx(opt.cost.value, rel=1e-12)

    @pytest.mark.parametrize("seed", range(10))
    def test_never_worse_than_init(self, seed):
        inst = gen_random_simplified(7, seed=seed)
        init = nearest_neighbor(inst)
        init_cost = expected_cost_closed_form(init, inst).value
        res = local_search(inst, init, seed=seed)
        assert res.cost.value <= init_cost + 1e-12

    def test_respects_budget(self):
        inst = gen_random_simplified(8, seed=3)
        res = local_search(inst, nearest_neighbor(inst), budget=10)
        assert res.evaluations <= 10

    def test_quality_against_brute_force(self):
        close = 0
        total = 40
        for seed in range(total):
            inst = gen_random_simplified(6, seed=1000 + seed)
            res = local_search(inst, nearest_neighbor(inst), seed=seed)
            opt = brute_force(inst)
            assert res.cost.value >= opt.cost.value - 1e-12
            if res.cost.value <= opt.cost.value * 1.25 + 1e-12:
                close += 1
        assert close >= 0.9 * total


class TestBruteForceTsp:
    def test_unit_triangle(self):
        C = np.ones((3, 3)) - np.eye(3)
        tour, cost = brute_force_tsp(C)
        assert cost == pytest.approx(3.0)
        assert tour[0] == 0

    def test_square(self):
        # 4 points on a unit square: optimum is the perimeter, length 4
        pts = np.array([[0, 0], [1, 0], [1, 1], [0, 1]], dtype=float)
        C = np.linalg.norm(pts[:, None] - pts[None, :], axis=2)
        tour, cost = brute_force_tsp(C)
        assert cost == pytest.approx(4.0)
