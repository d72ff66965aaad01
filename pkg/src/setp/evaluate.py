"""Cost semantics: scenario cost and the three expected-cost evaluators.

The a-posteriori tour serves the edges that need service in the a priori
cyclic order, travels between them along matrix distances, and skips the
rest. Expected cost is computed three ways: an O(n^2) closed form, exhaustive
scenario enumeration (the ground-truth oracle), and seeded Monte Carlo.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import AprioriOrder, EulerianTour, OriginalInstance, Scenario, SimplifiedInstance

ENUMERATION_GUARD = 20

CLOSED_FORM = "closed_form"
ENUMERATION = "enumeration"
MONTE_CARLO = "monte_carlo"


@dataclass(frozen=True)
class ExpectedCost:
    value: float
    method: str
    stderr: float = 0.0


def _oriented_endpoints(order: AprioriOrder, inst: SimplifiedInstance):
    """Tail and head vertex arrays, one entry per cyclic position."""
    if order.n != inst.n:
        raise ValueError("order size %d != instance |R| = %d" % (order.n, inst.n))
    if sorted(order.sequence) != list(range(inst.n)):
        raise ValueError("order sequence is not a permutation of 0..n-1")
    R = np.asarray(inst.R, dtype=int)
    seq = np.asarray(order.sequence, dtype=int)
    flip = np.asarray(order.orient, dtype=bool)
    u = R[seq, 0]
    v = R[seq, 1]
    a = np.where(flip, v, u)
    b = np.where(flip, u, v)
    return a, b


def weighted_tour_costs(D: np.ndarray, a: np.ndarray, b: np.ndarray, W: np.ndarray) -> np.ndarray:
    """Core accumulation shared by every evaluator.

    `a`, `b` hold tail/head vertex ids per cyclic position, shaped (n,) or
    (rows, n); `W` holds per-position service weights in [0,1], shaped
    (rows, n). With 0/1 indicator rows the result is the scenario tour cost;
    with probability rows it is the expected cost (by linearity over the
    "position i served, next served is i+t" events).
    """
    W = np.atleast_2d(np.asarray(W, dtype=float))
    n = W.shape[1]
    svc = D[a, b]
    cost = (W * svc).sum(axis=-1)
    run = np.ones_like(W)
    q = 1.0 - W
    for t in range(1, n):
        Wj = np.roll(W, -t, axis=-1)
        aj = np.roll(a, -t, axis=-1)
        cost = cost + (W * Wj * run * D[b, aj]).sum(axis=-1)
        run = run * np.roll(q, -t, axis=-1)
    # wrap term: position i served and nothing else is
    cost = cost + (W * run * D[b, a]).sum(axis=-1)
    return cost


def aposteriori_cost(order: AprioriOrder, s: Scenario, inst: SimplifiedInstance) -> float:
    """Tour length actually driven for one realization."""
    if len(s.served) != inst.n:
        raise ValueError("scenario size %d != instance |R| = %d" % (len(s.served), inst.n))
    a, b = _oriented_endpoints(order, inst)
    seq = np.asarray(order.sequence, dtype=int)
    served = np.asarray(s.served, dtype=float)[seq]
    return float(weighted_tour_costs(inst.D, a, b, served[None, :])[0])


def expected_cost_closed_form(order: AprioriOrder, inst: SimplifiedInstance) -> ExpectedCost:
    """O(n^2) expected cost from per-position service and skip probabilities."""
    a, b = _oriented_endpoints(order, inst)
    p = inst.p[np.asarray(order.sequence, dtype=int)]
    value = float(weighted_tour_costs(inst.D, a, b, p[None, :])[0])
    return ExpectedCost(value=value, method=CLOSED_FORM)


def scenario_matrix(n: int) -> np.ndarray:
    """All 2^n served indicators as a bool matrix, row k = bits of k."""
    masks = np.arange(1 << n, dtype=np.int64)
    return (masks[:, None] >> np.arange(n)) & 1 == 1


def expected_cost_enumeration(
    order: AprioriOrder, inst: SimplifiedInstance, max_n: int = ENUMERATION_GUARD
) -> ExpectedCost:
    """Ground truth: sum of probability-weighted costs over all 2^n scenarios."""
    n = inst.n
    if n > max_n:
        raise ValueError("enumeration over 2^%d scenarios exceeds the guard n <= %d" % (n, max_n))
    a, b = _oriented_endpoints(order, inst)
    p = inst.p[np.asarray(order.sequence, dtype=int)]
    S = scenario_matrix(n)
    probs = np.prod(np.where(S, p, 1.0 - p), axis=1)
    total = 0.0
    chunk = 1 << 14
    for lo in range(0, S.shape[0], chunk):
        costs = weighted_tour_costs(inst.D, a, b, S[lo : lo + chunk].astype(float))
        total += float(probs[lo : lo + chunk] @ costs)
    return ExpectedCost(value=total, method=ENUMERATION)


def expected_cost_monte_carlo(
    order: AprioriOrder, inst: SimplifiedInstance, samples: int, seed: int
) -> ExpectedCost:
    """Sample mean of the scenario cost; reproducible for a fixed seed."""
    if samples < 1:
        raise ValueError("samples must be >= 1")
    a, b = _oriented_endpoints(order, inst)
    p = inst.p[np.asarray(order.sequence, dtype=int)]
    rng = np.random.default_rng(seed)
    costs = np.empty(samples)
    chunk = 1 << 14
    for lo in range(0, samples, chunk):
        k = min(chunk, samples - lo)
        served = (rng.random((k, len(p))) < p).astype(float)
        costs[lo : lo + k] = weighted_tour_costs(inst.D, a, b, served)
    if np.ptp(costs) == 0.0:  # degenerate draw: exact value, no error
        return ExpectedCost(value=float(costs[0]), method=MONTE_CARLO, stderr=0.0)
    mean = float(costs.mean())
    stderr = float(costs.std(ddof=1) / np.sqrt(samples)) if samples > 1 else 0.0
    return ExpectedCost(value=mean, method=MONTE_CARLO, stderr=stderr)


def expected_cost_original(
    tour: EulerianTour,
    inst: OriginalInstance,
    method: str = CLOSED_FORM,
    epsilon: float | None = None,
    samples: int = 100_000,
    seed: int = 0,
) -> ExpectedCost:
    """Expected cost of an Eulerian tour, via the simplified composition.

    Simplifies the instance, maps the tour to its induced order (with the
    depot edge prepended) and runs the chosen simplified evaluator. The
    depot edge contributes at most 2*epsilon to the value.
    """
    from . import transforms  # local import; transforms depends on this module

    from .core import induced_order

    simp, _ = transforms.simplify(inst, epsilon=epsilon)
    order = transforms.attach_depot_edge(induced_order(tour, inst), inst.n)
    if method == CLOSED_FORM:
        return expected_cost_closed_form(order, simp)
    if method == ENUMERATION:
        return expected_cost_enumeration(order, simp)
    if method == MONTE_CARLO:
        return expected_cost_monte_carlo(order, simp, samples=samples, seed=seed)
    raise ValueError("unknown method %r" % method)


def aposteriori_cost_original(
    tour: EulerianTour,
    s: Scenario,
    inst: OriginalInstance,
    sp: np.ndarray | None = None,
) -> float:
    """Direct original-form scenario cost, independent of the simplification.

    Walks the tour, serves the realized required edges along the edges
    themselves in tour order, and connects depot -> first edge, edge -> edge
    and last edge -> depot via shortest paths. Used as the oracle for the
    simplified composition.
    """
    from .core import induced_order
    from .graph import Multigraph, all_pairs_shortest_paths

    if len(s.served) != inst.n:
        raise ValueError("scenario size %d != |R| = %d" % (len(s.served), inst.n))
    g = Multigraph.from_instance(inst)
    if sp is None:
        sp = all_pairs_shortest_paths(g, inst.dist)
    order = induced_order(tour, inst)
    stops = []  # (tail vertex, head vertex, service length) per served edge, tour order
    for k, d in zip(order.sequence, order.orient):
        if s.served[k]:
            u, v = inst.edges[inst.required[k]]
            tail, head = (v, u) if d else (u, v)
            stops.append((tail, head, inst.dist[inst.required[k]]))
    if not stops:
        return 0.0
    ix = g.index
    total = sp[ix(inst.depot), ix(stops[0][0])]
    for i, (tail, head, length) in enumerate(stops):
        total += length
        if i + 1 < len(stops):
            total += sp[ix(head), ix(stops[i + 1][0])]
    total += sp[ix(stops[-1][1]), ix(inst.depot)]
    return float(total)


def expected_cost_original_direct(tour: EulerianTour, inst: OriginalInstance) -> ExpectedCost:
    """Oracle expectation: enumerate all scenarios against the direct walker."""
    from .graph import Multigraph, all_pairs_shortest_paths

    n = inst.n
    if n > ENUMERATION_GUARD:
        raise ValueError("enumeration over 2^%d scenarios exceeds the guard n <= %d" % (n, ENUMERATION_GUARD))
    sp = all_pairs_shortest_paths(Multigraph.from_instance(inst), inst.dist)
    p = np.asarray(inst.prob)
    total = 0.0
    for S in scenario_matrix(n):
        pr = float(np.prod(np.where(S, p, 1.0 - p)))
        if pr > 0.0:
            total += pr * aposteriori_cost_original(tour, Scenario(tuple(S)), inst, sp=sp)
    return ExpectedCost(value=total, method=ENUMERATION)
