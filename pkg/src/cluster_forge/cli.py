"""Command-line front end.

Exit status: 0 when the identity holds or the operation succeeded, 1 when
two exact computations disagree, 2 on usage or capacity errors.
"""
from __future__ import annotations

import argparse
import math
import sys
import time
from typing import Sequence

from . import formats
from .activity import ContractError, least_active, least_active_h, psi, psi_h
from .graph import CapacityError, LabeledGraph, is_connected
from .identities import (IdentityReport, capacity, continuum_identity, discrete_identity,
                         lambert_closed_form, lambert_series, potts_both_sides)
from .polytope import count_subpolytopes, mayer_weight, mc_volume
from .trees import (count_h_increasing_trees, count_increasing_trees, enumerate_h_increasing_trees,
                    enumerate_increasing_trees, enumerate_rooted_cayley_trees, is_h_increasing_tree,
                    tree_to_height)

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _heights(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(",") if x.strip() != "")
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _report(command: str, params: dict, computed, expected, match: bool, work: dict,
            millis: float, **extra) -> dict:
    return {"command": command, "params": params, "computed": computed, "expected": expected,
            "match": match, "work": work, "millis": round(millis, 3), **extra}


def _from_identity(command: str, r: IdentityReport) -> dict:
    return _report(command, r.params, r.computed, r.expected, r.match, r.work, r.millis)


def _workers(args) -> int:
    if args.workers < 1:
        raise UsageError("--workers must be >= 1")
    return args.workers


def cmd_discrete(args) -> dict:
    return _from_identity("discrete", discrete_identity(args.n, args.method, _workers(args)))


def cmd_continuum(args) -> dict:
    return _from_identity("continuum", continuum_identity(args.n, args.method, _workers(args)))


def cmd_weight(args) -> dict:
    t0 = time.perf_counter()
    G = formats.parse_graph(formats.read_source(args.graph))
    if G.n_vertices > capacity(8):
        raise CapacityError(f"weight limited to {capacity(8)} vertices")
    w = mayer_weight(G, _workers(args))
    count = count_subpolytopes(G, args.workers)
    extra = {"value": w.value, "volume": w.volume, "subpolytope_count": count}
    params = {"n_vertices": G.n_vertices, "edges": G.edge_list(), "workers": args.workers}
    if args.mc:
        est, se = mc_volume(G, args.samples, args.seed, args.workers)
        extra.update(estimate=est, std_error=se)
        params.update(samples=args.samples, seed=args.seed)
    return _report("weight", params, w.value, None, True,
                   {"subpolytopes": count, "permutations": math.factorial(G.n_vertices - 1)},
                   (time.perf_counter() - t0) * 1e3, **extra)


def cmd_potts(args) -> dict:
    if args.graph is not None:
        H = formats.parse_graph(formats.read_source(args.graph))
    elif args.n is not None:
        if not 1 <= args.n <= capacity(5):
            raise CapacityError(f"potts needs 1 <= n <= {capacity(5)}")
        H = LabeledGraph.complete(args.n)
    else:
        raise UsageError("potts needs a graph file or --n")
    r = potts_both_sides(H, args.q, args.u)
    return _report("potts", r.params, r.computed, r.expected, r.match, r.work, r.millis)


def cmd_psi(args) -> dict:
    t0 = time.perf_counter()
    G = formats.parse_graph(formats.read_source(args.graph))
    if not is_connected(G):
        raise ContractError("psi needs a connected graph")
    if args.h is None:
        # discrete graphs are shown on 1..n
        e = least_active(G)
        out = psi(G)
        shift = 1
        params = {"n_vertices": G.n_vertices, "edges": _shifted(G.edge_list(), 1), "labels": "1..n"}
    else:
        h = args.h
        if len(h) != G.n_vertices - 1:
            raise UsageError(f"--h needs {G.n_vertices - 1} values for a graph on 0..{G.n_vertices - 1}")
        out = psi_h(G, h)
        e = least_active_h(G, h)
        shift = 0
        params = {"n_vertices": G.n_vertices, "edges": G.edge_list(), "h": list(h), "labels": "0..n"}
    edges = _shifted(out.edge_list(), shift)
    active = None if e is None else [e[0] + shift, e[1] + shift]
    return _report("psi", params, edges, None, True, {"edges_in": G.n_edges, "edges_out": out.n_edges},
                   (time.perf_counter() - t0) * 1e3, fixed=out == G, active_edge=active)


def _shifted(edges, k):
    return [[i + k, j + k] for i, j in edges]


def cmd_trees(args) -> dict:
    t0 = time.perf_counter()
    listing = None
    params: dict = {"kind": args.kind}
    if args.kind == "h_increasing":
        if args.h is None:
            raise UsageError("--kind h_increasing needs --h")
        h = args.h
        if args.n is not None and args.n != len(h) + 1:
            raise UsageError("--n must equal len(h) + 1")
        if len(h) + 1 > capacity(10):
            raise CapacityError("height vector too long")
        params.update(h=list(h), n_vertices=len(h) + 1)
        if args.root is not None:
            raise UsageError("--root applies to --kind cayley; h-increasing trees are rooted at the lowest centroid")
        trees = list(enumerate_h_increasing_trees(h))
        computed, expected = len(trees), count_h_increasing_trees(h)
        assert all(is_h_increasing_tree(T, h) for T in trees)
        listing = [[list(e) for e in T.edge_list()] for T in trees]
    else:
        if args.n is None:
            raise UsageError(f"--kind {args.kind} needs --n")
        n = args.n
        params["n_vertices"] = n
        if args.kind == "increasing":
            if args.root is not None:
                raise UsageError("--root applies to --kind cayley")
            if not 1 <= n <= capacity(9):
                raise CapacityError(f"increasing trees limited to n <= {capacity(9)}")
            trees = list(enumerate_increasing_trees(n))
            computed, expected = len(trees), count_increasing_trees(n)
            if args.list:
                listing = [_shifted(T.edge_list(), 1) for T in trees]
        else:
            if not 1 <= n <= capacity(7):
                raise CapacityError(f"cayley trees limited to n <= {capacity(7)}")
            rooted = list(enumerate_rooted_cayley_trees(n))
            if args.root is not None:
                rooted = [T for T in rooted if T.root == args.root]
                params["root"] = args.root
            computed = len(rooted)
            expected = n ** (n - 1) if args.root is None else n ** (n - 2)
            if args.list:
                listing = [{"root": T.root, "edges": [list(e) for e in T.edges()]} for T in rooted]
    extra = {} if listing is None else {"trees": listing}
    return _report("trees", params, computed, expected,
                   expected is None or computed == expected, {"trees": computed},
                   (time.perf_counter() - t0) * 1e3, **extra)


def cmd_encode_tree(args) -> dict:
    t0 = time.perf_counter()
    T = formats.parse_tree(formats.read_source(args.tree))
    h = tree_to_height(T)
    ok = is_h_increasing_tree(T.graph(), h)
    return _report("encode-tree", {"root": T.root, "edges": [list(e) for e in T.edges()]},
                   ",".join(str(x) for x in h), None, ok, {"vertices": T.n_vertices},
                   (time.perf_counter() - t0) * 1e3, ok=ok, h=list(h))


def cmd_lambert(args) -> dict:
    t0 = time.perf_counter()
    m = args.n
    if not 1 <= m <= capacity(40):
        raise CapacityError(f"lambert needs 1 <= n <= {capacity(40)}")
    series = lambert_series(m)[m]
    closed = lambert_closed_form(m)
    return _report("lambert", {"m": m}, series, closed, series == closed,
                   {"degree": m}, (time.perf_counter() - t0) * 1e3)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["json", "csv", "text"], default="json")
    common.add_argument("--out", metavar="FILE", help="write the report here instead of stdout")
    common.add_argument("--workers", type=int, default=1, help="worker processes (default 1)")

    parser = argparse.ArgumentParser(prog="cluster-forge", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("discrete", parents=[common], help="signed connected-graph sum on K_n")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--method", choices=["direct", "fixed_points"], default="direct",
                   help="brute-force sum or psi fixed points (default direct)")
    p.set_defaults(func=cmd_discrete)

    p = sub.add_parser("continuum", parents=[common], help="Mayer weight sum over connected graphs")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--method", choices=["direct", "per_height", "trees"], default="trees",
                   help="default trees")
    p.set_defaults(func=cmd_continuum)

    p = sub.add_parser("weight", parents=[common], help="exact Mayer weight of one graph")
    p.add_argument("graph", help="edge-list file, or - for stdin")
    p.add_argument("--mc", action="store_true", help="add a Monte Carlo volume estimate")
    p.add_argument("--samples", type=int, default=1_000_000, help="Monte Carlo draws")
    p.add_argument("--seed", type=int, default=0, help="Monte Carlo seed")
    p.set_defaults(func=cmd_weight)

    p = sub.add_parser("potts", parents=[common], help="coloring side vs subgraph side")
    p.add_argument("graph", nargs="?", help="edge-list file; defaults to K_n with --n")
    p.add_argument("--n", type=int)
    p.add_argument("--q", type=int, required=True, help="number of colors")
    p.add_argument("--u", type=int, required=True, help="weight of a monochromatic edge")
    p.set_defaults(func=cmd_potts)

    p = sub.add_parser("psi", parents=[common], help="apply the killing involution")
    p.add_argument("graph", help="edge-list file, or - for stdin")
    p.add_argument("--h", type=_heights, help="comma-separated heights h_1..h_n; selects psi_h")
    p.set_defaults(func=cmd_psi)

    p = sub.add_parser("trees", parents=[common], help="count or list trees")
    p.add_argument("--n", type=int)
    p.add_argument("--kind", choices=["increasing", "cayley", "h_increasing"], required=True)
    p.add_argument("--h", type=_heights, help="heights for --kind h_increasing")
    p.add_argument("--root", type=int, help="fix the root (cayley only)")
    p.add_argument("--list", action="store_true", help="include the trees in the report")
    p.set_defaults(func=cmd_trees)

    p = sub.add_parser("encode-tree", parents=[common], help="height vector of a rooted tree")
    p.add_argument("tree", help="rooted-tree file, or - for stdin")
    p.set_defaults(func=cmd_encode_tree)

    p = sub.add_parser("lambert", parents=[common], help="coefficient of z^n in L(z)")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_lambert)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        report = args.func(args)
    except (UsageError, CapacityError, ContractError, formats.FormatError, ValueError, OSError) as exc:
        print(f"cluster-forge {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    formats.emit(formats.render(report, args.format), args.out)
    return EXIT_OK if report["match"] else EXIT_MISMATCH


if __name__ == "__main__":
    sys.exit(main())
