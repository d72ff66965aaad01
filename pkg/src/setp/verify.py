"""Machine-checkable verification suites for the library's structural claims.

Each suite returns (ok, lines) where `lines` are key=value report records
with the observed margins. The suites are shared between the CLI and the
acceptance tests.
"""

from __future__ import annotations

import numpy as np

from . import evaluate, solvers, transforms
from .core import AprioriOrder, canonicalize, induced_order
from .graph import Multigraph, all_eulerian_tours


def oracle_suite(size: int = 10, seeds: int = 200, tol: float = 1e-9):
    """Closed-form vs exhaustive-enumeration agreement on random instances."""
    worst = 0.0
    agree = 0
    for seed in range(seeds):
        inst = transforms.gen_random_simplified(size, seed=seed, metric=(seed % 2 == 0))
        rng = np.random.default_rng(1000 + seed)
        seq = tuple(int(i) for i in rng.permutation(size))
        orient = tuple(int(o) for o in rng.integers(0, 2, size=size))
        order = canonicalize(AprioriOrder(seq, orient))
        cf = evaluate.expected_cost_closed_form(order, inst).value
        en = evaluate.expected_cost_enumeration(order, inst).value
        rel = abs(cf - en) / max(1.0, abs(en))
        worst = max(worst, rel)
        agree += rel <= tol
    ok = agree == seeds
    lines = [
        "checks=%d" % seeds,
        "agreements=%d" % agree,
        "max_rel_error=%.3e" % worst,
        "tolerance=%.1e" % tol,
    ]
    return ok, lines


def equivalence_suite(instances: int = 50, max_edges: int = 8):
    """Direct original-form expectation vs the simplified composition, for
    every Eulerian tour of small random instances."""
    worst = 0.0
    tours_checked = 0
    ok = True
    done = 0
    seed = 0
    while done < instances:
        seed += 1
        inst = _small_original(seed, max_edges)
        if inst is None:
            continue
        done += 1
        epsilon = transforms.default_epsilon(inst.dist)
        slack = (inst.n + 1) * epsilon + 1e-9
        for tour in all_eulerian_tours(Multigraph.from_instance(inst), inst.depot):
            direct = evaluate.expected_cost_original_direct(tour, inst).value
            composed = evaluate.expected_cost_original(tour, inst, epsilon=epsilon).value
            gap = abs(direct - composed)
            worst = max(worst, gap - slack)
            if gap > slack:
                ok = False
            tours_checked += 1
    lines = [
        "instances=%d" % done,
        "tours=%d" % tours_checked,
        "max_excess_over_slack=%.3e" % worst,
    ]
    return ok, lines


def _small_original(seed: int, max_edges: int):
    """Random original instance with at most `max_edges` edges, or None."""
    rng = np.random.default_rng(seed)
    v = int(rng.integers(3, 5))
    e = v + int(rng.integers(0, 2))
    n_req = int(rng.integers(1, 4))
    try:
        inst = transforms.gen_random_original(v, e, n_req, seed)
    except ValueError:
        return None
    if len(inst.edges) > max_edges:
        return None
    return inst


def reduction_suite(instances: int = 50, m_low: int = 4, m_high: int = 8):
    """Gadget optimum vs TSP optimum, and TSP-optimality of the lifted tour."""
    ok = True
    worst = 0.0
    lifted_optimal = 0
    for seed in range(instances):
        rng = np.random.default_rng(seed)
        m = int(rng.integers(m_low, m_high + 1))
        tsp = transforms.gen_random_tsp(m, seed)
        epsilon = 1e-6 * float(np.min(tsp.C[tsp.C > 0]))
        gadget, vmap = transforms.tsp_to_setp(tsp, epsilon)
        setp_opt = solvers.brute_force(gadget)
        _, tsp_opt = solvers.brute_force_tsp(tsp.C)
        gap = abs(setp_opt.cost.value - (tsp_opt + m * epsilon))
        worst = max(worst, gap / (m * epsilon))
        if gap > m * epsilon:
            ok = False
        lifted = transforms.lift_to_tsp_tour(setp_opt.order, vmap)
        if abs(tsp.tour_cost(lifted) - tsp_opt) <= 1e-9 * max(1.0, tsp_opt):
            lifted_optimal += 1
        else:
            ok = False
    lines = [
        "instances=%d" % instances,
        "lifted_optimal=%d" % lifted_optimal,
        "max_gap_over_m_epsilon=%.3e" % worst,
    ]
    return ok, lines


def bijection_suite(m_max: int = 6):
    """lift(inject(tour)) is the identity on all undirected city tours."""
    import itertools

    checked = 0
    ok = True
    for m in range(3, m_max + 1):
        seen = set()
        for rest in itertools.permutations(range(1, m)):
            tour = transforms.canonical_city_tour((0,) + rest)
            if tour in seen:
                continue
            seen.add(tour)
            order = transforms.inject_tsp_tour(tour, m)
            vmap = {x: x // 2 for x in range(2 * m)}
            back = transforms.canonical_city_tour(transforms.lift_to_tsp_tour(order, vmap))
            checked += 1
            if back != tour:
                ok = False
    return ok, ["tours_checked=%d" % checked, "identity=%s" % ("yes" if ok else "no")]


def eulerian_contrast_suite(threshold: float = 1e-3):
    """Exhibit an Eulerian graph whose Eulerian tours induce different
    expected costs, by enumerating the tours of a bowtie of two triangles."""
    # two triangles sharing vertex 2; depot embedded at vertex 0
    vertices = range(5)
    edges = [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)]
    dist = [1.0, 2.0, 3.0, 1.5, 2.5, 0.5]
    g = Multigraph(vertices, edges)
    g, dist, v0 = transforms.embed_depot(g, dist, 0)
    from .core import OriginalInstance

    inst = OriginalInstance(
        vertices=g.vertices,
        edges=g.edges,
        dist=dist,
        depot=v0,
        required=(1, 4),
        prob=(0.5, 0.5),
    )
    costs = {}
    for tour in all_eulerian_tours(g, v0):
        order = induced_order(tour, inst)
        key = (order.sequence, order.orient)
        if key not in costs:
            costs[key] = evaluate.expected_cost_original_direct(tour, inst).value
    spread = max(costs.values()) - min(costs.values())
    ok = spread > threshold
    lines = [
        "distinct_induced_orders=%d" % len(costs),
        "cost_spread=%.6f" % spread,
        "threshold=%.1e" % threshold,
    ]
    return ok, lines


SUITES = {
    "oracle": oracle_suite,
    "equivalence": equivalence_suite,
    "reduction": reduction_suite,
    "bijection": bijection_suite,
    "eulerian-contrast": eulerian_contrast_suite,
}
