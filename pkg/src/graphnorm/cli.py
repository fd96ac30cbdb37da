"""Batch command-line front end.

Reads JSON from --input (or stdin), writes JSON/OFF/CSV to --output (or
stdout).  Exit codes: 0 success, 1 domain infeasibility reported as a
value, 2 malformed input or validation failure, 3 resource limit.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from fractions import Fraction

from . import exactla, fuzz, manifold, normball, polytope
from .exactla import rat_from_str, rat_to_str
from .manifold import InvalidGraph, NotRealizable, Unachievable
from .normball import NotANorm, ResourceLimit

EXIT_OK = 0
EXIT_INFEASIBLE = 1
EXIT_INVALID = 2
EXIT_RESOURCE = 3


class InputError(ValueError):
    pass


def _read_json(path):
    try:
        if path is None or path == "-":
            return json.load(sys.stdin)
        with open(path) as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise InputError("JSON parse error at line %d, column %d: %s"
                         % (exc.lineno, exc.colno, exc.msg))
    except OSError as exc:
        raise InputError(str(exc))


def _write(args, text):
    if args.output is None or args.output == "-":
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")
    else:
        with open(args.output, "w") as fh:
            fh.write(text)


def _emit_json(args, obj):
    _write(args, json.dumps(obj, indent=2, sort_keys=True))


def _matrix_from_json(obj):
    try:
        return exactla.mat(
            [[rat_from_str(s) for s in row] for row in obj["matrix"]]
        )
    except (KeyError, ValueError) as exc:
        raise InputError("matrix: %s" % exc)


def _matrix_rows(m):
    return [[rat_to_str(x) for x in row] for row in m]


def _csv(rows):
    return "\n".join(",".join(r) for r in rows) + "\n"


def _parse_graph(obj):
    try:
        g = manifold.graph_from_json(obj)
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError("graph: %s" % exc)
    violations = manifold.validate(g)
    if violations:
        raise InvalidGraph("; ".join(violations))
    return g


def _parse_polytope(obj):
    try:
        return polytope.polytope_from_json(obj)
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError("polytope: %s" % exc)


def _parse_norm(obj):
    try:
        return normball.norm_from_json(obj)
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError("norm: %s" % exc)


def _emit_polytope(args, ball, extra=None):
    if args.format == "off":
        _write(args, polytope.polytope_to_off(ball))
    else:
        obj = polytope.polytope_to_json(ball)
        if extra:
            obj.update(extra)
        _emit_json(args, obj)


# ---------------------------------------------------------------------------
# subcommands


def cmd_check(args):
    g = _parse_graph(_read_json(args.input))
    rep = manifold.invariants(g)
    _emit_json(args, {
        "b1_gamma": rep.b1_gamma,
        "null_space_dim": rep.null_space_dim,
        "kernel_dim": rep.kernel_dim,
        "b2": rep.b2,
        "fibered": rep.fibered,
    })
    return EXIT_OK


def cmd_matrix(args):
    g = _parse_graph(_read_json(args.input))
    rows = _matrix_rows(manifold.reduced_plumbing_matrix(g))
    if args.format == "csv":
        _write(args, _csv(rows))
    else:
        _emit_json(args, {"matrix": rows})
    return EXIT_OK


def cmd_kernel(args):
    obj = _read_json(args.input)
    if "vertices" in obj:
        m = manifold.reduced_plumbing_matrix(_parse_graph(obj))
    else:
        m = _matrix_from_json(obj)
    basis = exactla.kernel_basis(m)
    rows = [[rat_to_str(x) for x in v] for v in basis]
    if args.format == "csv":
        _write(args, _csv(rows) if rows else "\n")
    else:
        _emit_json(args, {"kernel": rows})
    return EXIT_OK


def cmd_norm_eval(args):
    obj = _read_json(args.input)
    g = _parse_graph(obj.get("graph", {}))
    try:
        l = tuple(rat_from_str(str(s)) for s in obj["tuple"])
    except (KeyError, ValueError) as exc:
        raise InputError("tuple: %s" % exc)
    try:
        value = manifold.thurston_value(g, l)
    except NotRealizable:
        _emit_json(args, {"realizable": False})
        return EXIT_INFEASIBLE
    _emit_json(args, {"realizable": True, "value": rat_to_str(value)})
    return EXIT_OK


def cmd_ball(args):
    nrm = _parse_norm(_read_json(args.input))
    if args.verify_equal:
        deflated = normball.unit_ball_deflate(nrm)
        oracle = normball.unit_ball_oracle(nrm, max_k=args.max_k)
        if deflated != oracle:
            _emit_json(args, {
                "equal": False,
                "deflate": polytope.polytope_to_json(deflated),
                "oracle": polytope.polytope_to_json(oracle),
            })
            return EXIT_INFEASIBLE
        _emit_polytope(args, deflated, extra={"equal": True})
        return EXIT_OK
    if args.oracle:
        ball = normball.unit_ball_oracle(nrm, max_k=args.max_k)
    else:
        ball = normball.unit_ball_deflate(nrm)
    _emit_polytope(args, ball)
    return EXIT_OK


def cmd_realize(args):
    obj = _read_json(args.input)
    try:
        betas = [
            tuple(rat_from_str(str(s)) for s in row) for row in obj["betas"]
        ]
    except (KeyError, ValueError) as exc:
        raise InputError("betas: %s" % exc)
    if args.genera:
        genera = [int(s) for s in args.genera.split(",")]
    else:
        genera = [int(x) for x in obj.get("genera", [0] * len(betas))]
    result = manifold.realize(betas, genera, args.fibered)
    _emit_json(args, manifold.realization_to_json(result))
    return EXIT_OK


def cmd_complete(args):
    p = _parse_polytope(_read_json(args.input))
    nrm = normball.completion(p)
    ball = normball.unit_ball_deflate(nrm)
    refines = polytope.cone_refines(ball, p)
    _emit_json(args, {
        "norm": normball.norm_to_json(nrm),
        "ball": polytope.polytope_to_json(ball),
        "refines": refines,
    })
    return EXIT_OK


def cmd_weights(args):
    p = _parse_polytope(_read_json(args.input))
    solution = normball.weight_solve(p)
    if solution is None:
        _emit_json(args, {"feasible": False})
        return EXIT_INFEASIBLE
    _emit_json(args, {
        "feasible": True,
        "weights": [
            {"hyperplane": [rat_to_str(x) for x in b], "weight": rat_to_str(w)}
            for b, w in solution
        ],
    })
    return EXIT_OK


def cmd_verify(args):
    rng = random.Random(args.seed)
    failures = []

    def report(name, ok):
        print("%s %s" % ("PASS" if ok else "FAIL", name))
        if not ok:
            failures.append(name)

    ok = True
    for _ in range(25):
        nrm = fuzz.random_norm(rng)
        ball = normball.unit_ball_deflate(nrm)
        if ball != normball.unit_ball_oracle(nrm, max_k=args.max_k):
            ok = False
        if any(normball.evaluate(nrm, v) != 1 for v in ball.vertices):
            ok = False
    report("deflation equals oracle on 25 random norms", ok)

    ok = True
    for _ in range(10):
        betas, genera, fibered = fuzz.random_realization_target(rng)
        if not manifold.realize(betas, genera, fibered).verified:
            ok = False
    report("realization ledger verified on 10 random targets", ok)

    ok = True
    for _ in range(200):
        nrm = fuzz.random_norm(rng, dmax=3, kmax=5)
        m = rng.randint(1, nrm.dim)
        emb = tuple(
            tuple(Fraction(rng.randint(-2, 2)) for _ in range(m))
            for _ in range(nrm.dim)
        )
        if exactla.rank(emb) != m:
            continue
        pulled = normball.pullback(nrm, emb, Fraction(1, 2))
        v = tuple(Fraction(rng.randint(-4, 4)) for _ in range(m))
        lhs = normball.evaluate(pulled, v)
        rhs = normball.evaluate(nrm, exactla.matvec(emb, v)) / 2
        if lhs != rhs:
            ok = False
    report("pullback commutes with evaluation (200 fuzzed)", ok)

    ok = True
    for _ in range(20):
        g = fuzz.random_graph(rng)
        rep = manifold.invariants(g)
        if rep.b2 != rep.kernel_dim + rep.null_space_dim:
            ok = False
    report("invariant formulas on 20 random graphs", ok)

    return EXIT_OK if not failures else EXIT_INFEASIBLE


# ---------------------------------------------------------------------------


def build_parser():
    parser = argparse.ArgumentParser(
        prog="graphnorm",
        description="Thurston norm toolkit for good graph manifolds",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)
    default_max_k = int(os.environ.get("THURSTON_MAX_K",
                                       normball.DEFAULT_MAX_K))

    def add(name, func, **kwargs):
        p = sub.add_parser(name, **kwargs)
        p.add_argument("--input", "-i", default=None,
                       help="input JSON path (default: stdin)")
        p.add_argument("--output", "-o", default=None,
                       help="output path (default: stdout)")
        p.add_argument("--format", choices=["json", "off", "csv"],
                       default="json")
        p.add_argument("--max-k", type=int, default=default_max_k,
                       help="functional-count bound for the oracle")
        p.set_defaults(func=func)
        return p

    add("check", cmd_check, help="invariant report for a graph")
    add("matrix", cmd_matrix, help="reduced plumbing matrix")
    add("kernel", cmd_kernel, help="kernel basis of a matrix or graph")
    add("norm-eval", cmd_norm_eval, help="Thurston norm of a fiber tuple")

    p = add("ball", cmd_ball, help="unit ball of a sum-abs norm")
    p.add_argument("--oracle", action="store_true",
                   help="use the arrangement oracle instead of deflation")
    p.add_argument("--verify-equal", action="store_true",
                   help="run both constructions and require equality")

    p = add("realize", cmd_realize, help="synthesize a graph manifold")
    p.add_argument("--fibered", type=lambda s: s.lower() != "false",
                   default=True, help="true/false (default true)")
    p.add_argument("--genera", default=None,
                   help='comma-separated base genera, e.g. "0,1,0"')

    add("complete", cmd_complete, help="completion norm and its ball")
    add("weights", cmd_weights, help="solve for hyperplane weights")

    p = add("verify", cmd_verify, help="run the randomized property suite")
    p.add_argument("--seed", type=int, default=0)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print("input error: %s" % exc, file=sys.stderr)
        return EXIT_INVALID
    except (InvalidGraph, NotANorm, Unachievable, polytope.NotSymmetric,
            polytope.NotFullDimensional, polytope.DimensionMismatch,
            polytope.ZeroNormal) as exc:
        print("validation error: %s" % exc, file=sys.stderr)
        return EXIT_INVALID
    except ResourceLimit as exc:
        print("resource limit: %s" % exc, file=sys.stderr)
        return EXIT_RESOURCE


if __name__ == "__main__":
    sys.exit(main())
