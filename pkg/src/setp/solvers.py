"""Solvers over the order/orientation solution space: exhaustive search for
small instances, a greedy constructor and 2-opt local search for larger ones,
plus a small exact TSP solver used to certify the reduction gadget."""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass

import numpy as np

from .core import AprioriOrder, SimplifiedInstance, canonicalize
from .evaluate import CLOSED_FORM, ExpectedCost, expected_cost_closed_form, weighted_tour_costs

BRUTE_FORCE_GUARD = 9


@dataclass(frozen=True)
class SolveResult:
    order: AprioriOrder
    cost: ExpectedCost
    evaluations: int
    wall_time: float


def _batch_costs(inst: SimplifiedInstance, seqs: np.ndarray, orients: np.ndarray) -> np.ndarray:
    """Closed-form expected cost for a batch of (sequence, orientation) rows."""
    R = np.asarray(inst.R, dtype=int)
    u = R[seqs, 0]
    v = R[seqs, 1]
    flip = orients.astype(bool)
    a = np.where(flip, v, u)
    b = np.where(flip, u, v)
    p = inst.p[seqs]
    return weighted_tour_costs(inst.D, a, b, p)


def brute_force(inst: SimplifiedInstance, max_n: int = BRUTE_FORCE_GUARD) -> SolveResult:
    """Global minimum over all canonical cyclic orders and orientations.

    Edge 0 is fixed at position 0 (rotation symmetry), leaving
    (n-1)! * 2^n candidates. Exact-cost ties are broken by lexicographically
    smallest (sequence, orient).
    """
    n = inst.n
    if n > max_n:
        raise ValueError("brute force over (n-1)!*2^n candidates exceeds the guard n <= %d" % max_n)
    t0 = time.perf_counter()
    orients = ((np.arange(1 << n)[:, None] >> np.arange(n)) & 1).astype(np.int8)
    n_or = orients.shape[0]
    best_cost = np.inf
    best_key = None
    evaluations = 0
    chunk = max(1, (1 << 16) // n_or)
    perm_iter = itertools.permutations(range(1, n))
    while True:
        block = list(itertools.islice(perm_iter, chunk))
        if not block:
            break
        seqs = np.concatenate(
            [np.zeros((len(block), 1), dtype=int), np.asarray(block, dtype=int).reshape(len(block), n - 1)],
            axis=1,
        )
        seqs_full = np.repeat(seqs, n_or, axis=0)
        orients_full = np.tile(orients, (len(block), 1))
        costs = _batch_costs(inst, seqs_full, orients_full)
        evaluations += costs.shape[0]
        lo = float(costs.min())
        if lo <= best_cost:
            for i in np.flatnonzero(costs == lo):
                key = (tuple(int(x) for x in seqs_full[i]), tuple(int(x) for x in orients_full[i]))
                if lo < best_cost or key < best_key:
                    best_cost = lo
                    best_key = key
    order = AprioriOrder(best_key[0], best_key[1])
    return SolveResult(
        order=order,
        cost=ExpectedCost(value=best_cost, method=CLOSED_FORM),
        evaluations=evaluations,
        wall_time=time.perf_counter() - t0,
    )


def nearest_neighbor(inst: SimplifiedInstance, start_edge: int = 0) -> AprioriOrder:
    """Greedy chain: from the current head, enter the unvisited edge with the
    closest endpoint; that endpoint becomes its tail. Smallest-index ties."""
    n = inst.n
    if not 0 <= start_edge < n:
        raise ValueError("start_edge out of range")
    D = inst.D
    seq = [start_edge]
    orient = [0]
    head = inst.R[start_edge][1]
    remaining = [i for i in range(n) if i != start_edge]
    while remaining:
        best = None
        for i in remaining:
            u, v = inst.R[i]
            for o, tail in ((0, u), (1, v)):
                key = (D[head, tail], i, o)
                if best is None or key < best:
                    best = key
        _, i, o = best
        remaining.remove(i)
        seq.append(i)
        orient.append(o)
        u, v = inst.R[i]
        head = u if o else v
    return canonicalize(AprioriOrder(tuple(seq), tuple(orient)))


def _neighbors(order: AprioriOrder):
    """2-opt segment reversals (flipping orientations inside the segment) and
    single orientation flips."""
    seq = list(order.sequence)
    orient = list(order.orient)
    n = len(seq)
    for i in range(n):
        o2 = orient.copy()
        o2[i] ^= 1
        yield AprioriOrder(tuple(seq), tuple(o2))
    for i in range(n - 1):
        for j in range(i + 1, n):
            if i == 0 and j == n - 1:
                continue  # reversing the whole cycle = relabeling, no new tour
            s2 = seq[:i] + seq[i : j + 1][::-1] + seq[j + 1 :]
            o2 = orient[:i] + [o ^ 1 for o in orient[i : j + 1][::-1]] + orient[j + 1 :]
            yield AprioriOrder(tuple(s2), tuple(o2))


def local_search(
    inst: SimplifiedInstance,
    init: AprioriOrder,
    budget: int = 1_000_000,
    seed: int = 0,
) -> SolveResult:
    """Best-improvement descent over the 2-opt + orientation-flip neighborhood.

    Stops at a local optimum or when `budget` cost evaluations are spent.
    Never returns a cost worse than the initial solution.
    """
    t0 = time.perf_counter()
    current = canonicalize(init)
    cost = expected_cost_closed_form(current, inst).value
    evaluations = 1
    improved = True
    while improved and evaluations < budget:
        improved = False
        best_nb = None
        best_cost = cost
        for nb in _neighbors(current):
            if evaluations >= budget:
                break
            c = expected_cost_closed_form(nb, inst).value
            evaluations += 1
            if c < best_cost:
                best_cost = c
                best_nb = nb
        if best_nb is not None:
            current = canonicalize(best_nb)
            cost = expected_cost_closed_form(current, inst).value
            improved = True
    return SolveResult(
        order=current,
        cost=ExpectedCost(value=cost, method=CLOSED_FORM),
        evaluations=evaluations,
        wall_time=time.perf_counter() - t0,
    )


def brute_force_tsp(C: np.ndarray) -> tuple[tuple[int, ...], float]:
    """Exact TSP by permutation enumeration with city 0 fixed.

    Returns (tour, cost); ties go to the lexicographically smallest tour.
    """
    C = np.asarray(C, dtype=float)
    m = C.shape[0]
    if m > 10:
        raise ValueError("TSP enumeration limited to 10 cities, got %d" % m)
    best_cost = np.inf
    best_tour = None
    for rest in itertools.permutations(range(1, m)):
        tour = (0,) + rest
        cost = sum(C[tour[i], tour[(i + 1) % m]] for i in range(m))
        if cost < best_cost or (cost == best_cost and tour < best_tour):
            best_cost = cost
            best_tour = tour
    return best_tour, float(best_cost)
