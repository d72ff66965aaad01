"""Command-line surface: validate, evaluate, solve, reduce, gen, verify.

Reports are line-oriented key=value records on stdout. Exit codes: 0 success,
1 domain failure (invalid instance, failed check), 2 usage or parse error.
Timing goes to stderr so that seeded runs are byte-reproducible on stdout.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from . import serialize, solvers, transforms, verify
from .core import (
    AprioriOrder,
    OriginalInstance,
    SimplifiedInstance,
    validate_original,
    validate_simplified,
)
from .evaluate import (
    expected_cost_closed_form,
    expected_cost_enumeration,
    expected_cost_monte_carlo,
)


def parse_order_spec(spec: str, n: int) -> AprioriOrder:
    """Parse a solution like `0+,2-,1+` into an order over n edges."""
    seq = []
    orient = []
    for tok in spec.split(","):
        tok = tok.strip()
        if not tok or tok[-1] not in "+-":
            raise ValueError("bad order token %r (want e.g. 3+ or 3-)" % tok)
        seq.append(int(tok[:-1]))
        orient.append(0 if tok[-1] == "+" else 1)
    if sorted(seq) != list(range(n)):
        raise ValueError("order %r is not a permutation of 0..%d" % (spec, n - 1))
    return AprioriOrder(tuple(seq), tuple(orient))


def format_order_spec(order: AprioriOrder) -> str:
    return ",".join("%d%s" % (i, "-" if o else "+") for i, o in zip(order.sequence, order.orient))


def _load(path):
    try:
        return serialize.load(path)
    except FileNotFoundError:
        print("error=cannot read %s" % path, file=sys.stderr)
        raise SystemExit(2)
    except serialize.FormatError as exc:
        print("error=%s" % exc, file=sys.stderr)
        raise SystemExit(2)


def _as_simplified(inst, epsilon=None):
    """Simplified instance for evaluation/solving; originals are reduced."""
    if isinstance(inst, SimplifiedInstance):
        return inst, None
    if isinstance(inst, OriginalInstance):
        if epsilon is None:
            epsilon = transforms.default_epsilon(inst.dist)
        simp, _ = transforms.simplify(inst, epsilon)
        print("epsilon=%r" % epsilon)
        return simp, epsilon
    print("error=expected an original or simplified instance", file=sys.stderr)
    raise SystemExit(2)


def cmd_validate(args) -> int:
    inst = _load(args.path)
    if isinstance(inst, OriginalInstance):
        violations = validate_original(inst)
    elif isinstance(inst, SimplifiedInstance):
        violations = validate_simplified(inst)
    else:
        violations = []  # TspInstance invariants hold by construction
    if violations:
        for v in violations:
            print("violation=%s" % v)
        return 1
    print("OK")
    return 0


def cmd_evaluate(args) -> int:
    inst, _ = _as_simplified(_load(args.path))
    try:
        order = parse_order_spec(args.order, inst.n)
    except ValueError as exc:
        print("error=%s" % exc, file=sys.stderr)
        return 2
    if args.method == "closed":
        res = expected_cost_closed_form(order, inst)
    elif args.method == "enum":
        res = expected_cost_enumeration(order, inst)
    else:
        res = expected_cost_monte_carlo(order, inst, samples=args.samples, seed=args.seed)
    print("method=%s" % res.method)
    print("value=%r" % res.value)
    if res.method == "monte_carlo":
        print("stderr=%r" % res.stderr)
        print("samples=%d" % args.samples)
        print("seed=%d" % args.seed)
    return 0


def cmd_solve(args) -> int:
    inst, _ = _as_simplified(_load(args.path))
    if args.exact:
        try:
            result = solvers.brute_force(inst)
        except ValueError as exc:
            print("error=%s" % exc, file=sys.stderr)
            return 1
    else:
        init = solvers.nearest_neighbor(inst)
        result = solvers.local_search(inst, init, budget=args.budget, seed=args.seed)
    print("order=%s" % format_order_spec(result.order))
    print("cost=%r" % result.cost.value)
    print("evaluations=%d" % result.evaluations)
    print("wall_time=%.3fs" % result.wall_time, file=sys.stderr)
    return 0


def cmd_reduce(args) -> int:
    inst = _load(args.path)
    if args.epsilon is not None and args.epsilon <= 0:
        print("error=epsilon must be positive", file=sys.stderr)
        return 2
    if args.source == "tsp":
        if not isinstance(inst, transforms.TspInstance):
            print("error=%s is not a tsp instance" % args.path, file=sys.stderr)
            return 2
        epsilon = args.epsilon
        if epsilon is None:
            epsilon = transforms.default_epsilon(inst.C[np.triu_indices(inst.m, 1)])
        simp, vmap = transforms.tsp_to_setp(inst, epsilon)
    else:
        if not isinstance(inst, OriginalInstance):
            print("error=%s is not an original instance" % args.path, file=sys.stderr)
            return 2
        epsilon = args.epsilon
        if epsilon is None:
            epsilon = transforms.default_epsilon(inst.dist)
        simp, vmap = transforms.simplify(inst, epsilon)
    out = args.out or (args.path + ".simplified.json")
    serialize.save(simp, out)
    serialize.save_vertex_map(vmap, out + ".map")
    print("epsilon=%r" % epsilon)
    print("instance=%s" % out)
    print("map=%s" % (out + ".map"))
    return 0


def cmd_gen(args) -> int:
    try:
        if args.kind == "simplified":
            obj = transforms.gen_random_simplified(args.n, seed=args.seed, metric=args.metric)
        elif args.kind == "tsp":
            obj = transforms.gen_random_tsp(args.n, seed=args.seed)
        else:
            n_req = args.required if args.required else max(1, args.e // 3)
            obj = transforms.gen_random_original(args.v, args.e, n_req, seed=args.seed)
    except ValueError as exc:
        print("error=%s" % exc, file=sys.stderr)
        return 2
    if args.out:
        serialize.save(obj, args.out)
        print("instance=%s" % args.out)
    else:
        sys.stdout.write(serialize.dumps(obj))
    return 0


def cmd_verify(args) -> int:
    suite = verify.SUITES[args.suite]
    if args.suite == "oracle":
        ok, lines = suite(size=args.size, seeds=args.seeds)
    elif args.suite == "equivalence":
        ok, lines = suite(instances=args.seeds)
    elif args.suite == "reduction":
        ok, lines = suite(instances=args.seeds, m_high=args.size if args.size else 8)
    elif args.suite == "bijection":
        ok, lines = suite(m_max=args.size if args.size else 6)
    else:
        ok, lines = suite()
    print("suite=%s" % args.suite)
    for line in lines:
        print(line)
    print("result=%s" % ("pass" if ok else "fail"))
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="setp", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check instance invariants")
    p.add_argument("path")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("evaluate", help="expected cost of an order")
    p.add_argument("path")
    p.add_argument("order", help="comma list of edge indices with +/- orientation, e.g. 0+,2-,1+")
    p.add_argument("--method", choices=["closed", "enum", "mc"], default="closed")
    p.add_argument("--samples", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("solve", help="optimize the expected cost")
    mode = p.add_mutually_exclusive_group(required=True)
    mode.add_argument("--exact", action="store_true")
    mode.add_argument("--heuristic", action="store_true")
    p.add_argument("--budget", type=int, default=1_000_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("path")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("reduce", help="reduce tsp/original to the simplified form")
    p.add_argument("path")
    p.add_argument("--from", dest="source", choices=["tsp", "original"], required=True)
    p.add_argument("--epsilon", type=float, default=None)
    p.add_argument("-o", "--out", default=None)
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("gen", help="generate a random instance")
    p.add_argument("--kind", choices=["original", "simplified", "tsp"], required=True)
    p.add_argument("--n", type=int, default=5, help="edges (simplified) or cities (tsp)")
    p.add_argument("--v", type=int, default=6, help="vertices (original)")
    p.add_argument("--e", type=int, default=8, help="edges before depot embedding (original)")
    p.add_argument("--required", type=int, default=0, help="required edges (original)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--metric", action="store_true")
    p.add_argument("-o", "--out", default=None)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("verify", help="run a structural verification suite")
    p.add_argument("--suite", choices=sorted(verify.SUITES), required=True)
    p.add_argument("--seeds", type=int, default=50)
    p.add_argument("--size", type=int, default=10)
    p.set_defaults(func=cmd_verify)

    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except SystemExit as exc:
        return int(exc.code or 0)


if __name__ == "__main__":
    sys.exit(main())
