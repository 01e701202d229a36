"""Command-line interface.

Subcommands: `convolve` (the five operations on measure files), `density`
(Stieltjes inversion on a grid, CSV), `graph` (rooted-graph products with
root moments), and `verify` (the deterministic identity suites).

Exit codes: 0 success / all checks pass, 1 a verify check failed, 2 parse
error, 3 not a moment sequence, 4 internal route mismatch, 5 domain error.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import convolve
from .errors import (
    DomainError,
    FreeconvError,
    InvalidParameter,
    NotAMomentSequence,
    RouteMismatch,
)
from .graphs import (
    free_product_ball,
    graph_comb,
    graph_orthogonal,
    graph_star,
    graph_to_json,
    parse_graph,
    root_spectral_moments,
)
from .measures import (
    fraction_to_str,
    measure_to_json,
    parse_measure,
    stieltjes_density,
)
from .verify import run_suites

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_PARSE = 2
EXIT_NOT_MOMENTS = 3
EXIT_ROUTE = 4
EXIT_DOMAIN = 5


def _load_json(path: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InvalidParameter(f"cannot read {path}: {exc}") from exc


def _load_measure(path: str):
    return parse_measure(_load_json(path))


def _print_measure(obj: dict, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(obj, indent=2))
        return
    for i, m in enumerate(obj["m"], start=1):
        print(f"m[{i}] = {m}")
    if "jacobi" in obj:
        print("alpha =", " ".join(obj["jacobi"]["alpha"]))
        print("omega =", " ".join(obj["jacobi"]["omega"]))
    if "atoms" in obj:
        for loc, w in obj["atoms"]:
            print(f"atom at {loc} with weight {w}")


def cmd_convolve(args) -> int:
    mu = _load_measure(args.mu)
    nu = _load_measure(args.nu)
    req = convolve.ConvolutionRequest(
        mu=mu, nu=nu, op=args.op, order=args.order, iterations=args.iterations
    )
    result = convolve.convolve_request(req)
    _print_measure(measure_to_json(result, args.order), args.output)
    return EXIT_OK


def cmd_density(args) -> int:
    rep = _load_measure(args.measure)
    if args.points < 2:
        raise InvalidParameter("need at least two grid points")
    step = (args.xmax - args.xmin) / (args.points - 1)
    grid = [args.xmin + i * step for i in range(args.points)]
    print("x,f")
    for x, f in stieltjes_density(rep, grid, epsilon=args.epsilon, depth=args.depth):
        print(f"{x:.12g},{f:.12g}")
    return EXIT_OK


def cmd_graph(args) -> int:
    g1 = parse_graph(_load_json(args.g1))
    g2 = parse_graph(_load_json(args.g2))
    if args.op == "star":
        g = graph_star(g1, g2)
    elif args.op == "comb":
        g = graph_comb(g1, g2)
    elif args.op == "orthogonal":
        g = graph_orthogonal(g1, g2)
    elif args.op == "free-ball":
        g = free_product_ball(g1, g2, args.radius)
    else:
        raise InvalidParameter(f"unknown graph operation {args.op!r}")
    out = {
        "graph": graph_to_json(g),
        "moments": [fraction_to_str(m) for m in root_spectral_moments(g, args.moments)],
    }
    print(json.dumps(out, indent=2))
    return EXIT_OK


def cmd_verify(args) -> int:
    results = run_suites(args.suite, n_max=args.n_max, seed=args.seed)
    failed = [r for r in results if not r.ok]
    for r in results:
        status = "PASS" if r.ok else "FAIL"
        detail = f"  ({r.detail})" if r.detail else ""
        print(f"{status} {r.name}{detail}")
    print(f"{len(results) - len(failed)}/{len(results)} checks passed")
    if failed:
        print(f"first failure: {failed[0].name}", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="freeconv",
        description="Convolutions of compactly supported probability measures "
        "(boolean, monotone, orthogonal, subordinate/s-free, free), exact at "
        "moment level, with graph products and a verification suite.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("convolve", help="convolve two measure files")
    p.add_argument(
        "op",
        choices=["free", "boolean", "monotone", "orthogonal", "sfree", "orthogonal-iter"],
    )
    p.add_argument("mu", help="left measure JSON file")
    p.add_argument("nu", help="right measure JSON file")
    p.add_argument("--order", type=int, default=10, help="number of exact moments")
    p.add_argument(
        "--iterations", type=int, default=None, help="iteration count for orthogonal-iter"
    )
    p.add_argument("--output", choices=["json", "table"], default="json")
    p.set_defaults(fn=cmd_convolve)

    p = sub.add_parser("density", help="Stieltjes-inversion density on a grid (CSV)")
    p.add_argument("measure", help="measure JSON file")
    p.add_argument("--xmin", type=float, default=-3.0)
    p.add_argument("--xmax", type=float, default=3.0)
    p.add_argument("--points", type=int, default=601)
    p.add_argument("--epsilon", type=float, default=1e-6)
    p.add_argument("--depth", type=int, default=64)
    p.set_defaults(fn=cmd_density)

    p = sub.add_parser("graph", help="rooted-graph products and root moments")
    p.add_argument("op", choices=["orthogonal", "comb", "star", "free-ball"])
    p.add_argument("g1", help="first graph JSON file")
    p.add_argument("g2", help="second graph JSON file")
    p.add_argument("--radius", type=int, default=6, help="word-length cap for free-ball")
    p.add_argument("--moments", type=int, default=6, help="number of root moments")
    p.set_defaults(fn=cmd_graph)

    p = sub.add_parser("verify", help="run the identity suites")
    p.add_argument(
        "--suite",
        choices=["partitions", "convolutions", "opmodel", "all"],
        default="all",
    )
    p.add_argument("--n-max", type=int, default=8)
    p.add_argument("--seed", type=int, default=7)
    p.set_defaults(fn=cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except NotAMomentSequence as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NOT_MOMENTS
    except RouteMismatch as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ROUTE
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except (InvalidParameter, FreeconvError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
