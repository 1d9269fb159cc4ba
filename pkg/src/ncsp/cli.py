"""Command-line front end.

Exit codes: 0 success (either verdict), 2 malformed input, 3 a limit was
exceeded (subset budget, oracle size guard, generator give-up), 4 internal
invariant failure.
"""

from __future__ import annotations

import argparse
import os
import sys
import time

from .apsp_core import (
    FeasibilityWitness,
    LimitExceeded,
    NegativeCycleWitness,
    SpanningArcWitness,
    subset_dp,
)
from .decomposition import solve
from .generator import GenerationFailed, GeneratorConfig, generate, single_block_instance
from .graph_core import ForestCycle, InternalError, MalformedInput, build_negative_forest
from .instance_io import emit, instance_digraph, parse_file, write_file
from .oracle import PATH_VERTEX_LIMIT, SizeGuard, full_oracle
from .path_recon import extract_path
from .tree_metrics import tree_distances

EXIT_OK = 0
EXIT_MALFORMED = 2
EXIT_LIMIT = 3
EXIT_INTERNAL = 4


def _status(solved: bool) -> str:
    return "nearly-conservative" if solved else "not-nearly-conservative"


def _format_witness(w) -> str:
    where = f" ({w.unit})" if getattr(w, "unit", None) else ""
    if isinstance(w, ForestCycle):
        return "witness forest-cycle " + " ".join(map(str, w.vertices))
    if isinstance(w, NegativeCycleWitness):
        verts = " ".join(map(str, w.vertices))
        return f"witness negative-cycle {verts} weight {w.weight}{where}"
    if isinstance(w, FeasibilityWitness):
        return (
            f"witness tree-violation pair {w.u} {w.v} tree-root {w.tree_root}"
            f" outside {w.outside} tree-back {w.tree_back}{where}"
        )
    if isinstance(w, SpanningArcWitness):
        a = w.arc
        return f"witness spanning-arc {a.tail} {a.head} weight {a.weight} tree-back {w.tree_back}{where}"
    return f"witness {w!r}"


def _print_distances(dist) -> None:
    n = dist.n
    for s in range(1, n + 1):
        for t in range(1, n + 1):
            if s == t:
                continue
            v = dist.entry(s, t)
            print(f"d {s} {t} {'inf' if v == float('inf') else v}")


def cmd_check(args) -> int:
    g = instance_digraph(parse_file(args.instance))
    out = solve(g, max_trees=args.max_k, want_paths=False)
    print(f"status {_status(out.solved)}")
    if not out.solved:
        print(_format_witness(out.witness))
    return EXIT_OK


def cmd_apsp(args) -> int:
    g = instance_digraph(parse_file(args.instance))
    out = solve(g, max_trees=args.max_k, want_paths=False)
    print(f"status {_status(out.solved)}")
    if out.solved:
        _print_distances(out.distances)
    else:
        print(_format_witness(out.witness))
    return EXIT_OK


def cmd_query(args) -> int:
    g = instance_digraph(parse_file(args.instance))
    s, t = args.source, args.target
    for x in (s, t):
        if not 1 <= x <= g.n:
            raise MalformedInput(f"query vertex {x} out of range 1..{g.n}")
    out = solve(g, max_trees=args.max_k)
    if not out.solved:
        print(f"status {_status(False)}")
        print(_format_witness(out.witness))
        return EXIT_OK
    d = out.distances.entry(s, t)
    if d == float("inf"):
        print("dist inf")
        return EXIT_OK
    path = extract_path(out.predecessors, s, t)
    print(f"dist {d}")
    print("path " + " ".join(map(str, path.vertices)))
    return EXIT_OK


def cmd_oracle(args) -> int:
    g = instance_digraph(parse_file(args.instance))
    verdict = full_oracle(g)
    print(f"status {_status(verdict.nearly_conservative)}")
    if verdict.nearly_conservative and verdict.distances is None and g.n > PATH_VERTEX_LIMIT:
        print(f"c distance enumeration skipped (n > {PATH_VERTEX_LIMIT})")
    if verdict.distances is not None:
        n = g.n
        for s in range(1, n + 1):
            for t in range(1, n + 1):
                if s == t:
                    continue
                v = int(verdict.distances[s, t])
                print(f"d {s} {t} {'inf' if v > (1 << 60) else v}")
    if not verdict.nearly_conservative:
        cyc, w = verdict.worst_cycle
        print(f"witness negative-cycle {' '.join(map(str, cyc))} weight {w}")
    return EXIT_OK


def cmd_gen(args) -> int:
    cfg = GeneratorConfig(
        n=args.n,
        seed=args.seed,
        arcs=args.arcs,
        trees=args.trees,
        tree_sizes=[int(x) for x in args.tree_sizes.split(",")] if args.tree_sizes else None,
        wmin=args.wmin,
        wmax=args.wmax,
        scc_count=args.scc_count,
        block_count=args.block_count,
        mixed=args.mixed,
        ensure_nc=args.ensure_nc,
    )
    inst = generate(cfg)
    if args.output:
        write_file(inst, args.output)
    else:
        sys.stdout.write(emit(inst))
    return EXIT_OK


def cmd_bench(args) -> int:
    ks = [int(x) for x in args.k_list.split(",")]
    print("k n seconds")
    for k in ks:
        inst = single_block_instance(args.n, k, args.seed)
        g = instance_digraph(inst)
        forest = build_negative_forest(g)
        trees = list(forest.trees)
        tables = [tree_distances(t) for t in trees]
        t0 = time.perf_counter()
        out = subset_dp(g, trees, tables, max_trees=args.max_k, want_paths=False)
        elapsed = time.perf_counter() - t0
        if not out.solved:
            raise InternalError("benchmark instance must be nearly conservative")
        print(f"{k} {args.n} {elapsed:.4f}")
    return EXIT_OK


def _default_max_k() -> int:
    try:
        return int(os.environ.get("NCD_MAX_K", "24"))
    except ValueError:
        return 24


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ncsp",
        description="All-pairs shortest simple paths in nearly conservative digraphs",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_max_k(p):
        p.add_argument(
            "--max-k",
            type=int,
            default=_default_max_k(),
            help="largest allowed number of negative trees per weak block "
            "(default 24, env NCD_MAX_K)",
        )

    p = sub.add_parser("check", help="decide whether the instance is nearly conservative")
    p.add_argument("instance")
    add_max_k(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("apsp", help="verdict plus the full distance listing")
    p.add_argument("instance")
    add_max_k(p)
    p.set_defaults(func=cmd_apsp)

    p = sub.add_parser("query", help="distance and explicit path for one pair")
    p.add_argument("instance")
    p.add_argument("--from", dest="source", type=int, required=True)
    p.add_argument("--to", dest="target", type=int, required=True)
    add_max_k(p)
    p.set_defaults(func=cmd_query)

    p = sub.add_parser("oracle", help="brute-force ground truth (small instances)")
    p.add_argument("instance")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("gen", help="emit a seeded random instance")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("-n", type=int, required=True)
    p.add_argument("--arcs", type=int, default=0, help="ordinary filler arcs")
    p.add_argument("--trees", type=int, default=0)
    p.add_argument("--tree-sizes", default=None, help="comma list, overrides --trees")
    p.add_argument("--wmin", type=int, default=0)
    p.add_argument("--wmax", type=int, default=20)
    p.add_argument("--scc-count", type=int, default=1)
    p.add_argument("--block-count", type=int, default=1)
    p.add_argument("--mixed", action="store_true")
    p.add_argument(
        "--ensure-nc",
        action="store_true",
        help="resample until the instance is nearly conservative",
    )
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("bench", help="subset-DP wall time against the tree count")
    p.add_argument("--n", type=int, default=60)
    p.add_argument("--k-list", default="2,4,6,8,10,12")
    p.add_argument("--seed", type=int, default=1)
    add_max_k(p)
    p.set_defaults(func=cmd_bench)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except MalformedInput as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MALFORMED
    except (LimitExceeded, SizeGuard, GenerationFailed) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_LIMIT
    except (InternalError, AssertionError) as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
