"""Command line entry point: ``sparrange <subcommand> ...``."""
from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import List, Optional

from .analysis import component_bound_report
from .arrange import arrange
from .graph import Arrangement, Graph, GraphError, arrangement_cost, parse_edge_list
from .harness import GenParams, generate, run_bench, run_verify
from .oracle import TooLarge, exact_minla
from .recognize import BadTerminals, NotSeriesParallel, decompose, recognize_terminals
from .sptree import TreeError, expand, minimize, parse_tree, serialize_tree


def _read(path: str) -> str:
    return sys.stdin.read() if path == "-" else Path(path).read_text()


def _load_graph(path: str, source: Optional[str], sink: Optional[str]) -> Graph:
    g = parse_edge_list(_read(path))
    if source is not None or sink is not None:
        if source is None or sink is None:
            raise BadTerminals("--source and --sink must be given together")
        return g.with_terminals(source, sink)
    if g.source is None:
        return g.with_terminals(*recognize_terminals(g))
    return g


def _print_arrangement(arr: Arrangement, cost: int) -> None:
    out = [f"{v} {arr[v]}" for v in arr.order()]
    out.append(f"# cost {cost}")
    print("\n".join(out))


def cmd_gen(args) -> int:
    tree = generate(GenParams(args.seed, args.leaves, args.max_fan, args.kmax, args.series_bias))
    print(serialize_tree(tree))
    return 0


def cmd_decompose(args) -> int:
    g = _load_graph(args.edges, args.source, args.sink)
    print(serialize_tree(decompose(g)))
    return 0


def cmd_arrange(args) -> int:
    if args.tree:
        tree = minimize(parse_tree(_read(args.tree)))
        g, _ = expand(tree)
        arr = arrange(tree)
    else:
        g = _load_graph(args.edges, args.source, args.sink)
        arr = arrange(decompose(g))
    _print_arrangement(arr, arrangement_cost(g, arr))
    return 0


def cmd_exact(args) -> int:
    g = parse_edge_list(_read(args.edges))
    cost, arr = exact_minla(g, args.limit)
    _print_arrangement(arr, cost)
    return 0


def cmd_verify(args) -> int:
    if args.tree:
        tree = minimize(parse_tree(_read(args.tree)))
        g, root = expand(tree)
        alg = arrange(tree)
        opt = None
        opt_cost = None
        if args.opt:
            opt_cost, opt = exact_minla(g, args.limit)
        report = component_bound_report(alg, opt, root, opt_cost=opt_cost)
        print("\n".join(report.lines()))
        if opt_cost is not None:
            print(f"# alg {arrangement_cost(g, alg)} opt {opt_cost}")
        return 0 if report.ok else 1
    summary = run_verify(args.sweep, args.max_nodes, args.seed, shuffles=args.shuffles,
                         node_limit=args.limit)
    print("\n".join(summary.lines()))
    return 0 if summary.ok else 1


def cmd_bench(args) -> int:
    sizes = [int(float(x)) for x in args.sizes.split(",") if x.strip()]
    print("# edges seconds")
    for edges, seconds in run_bench(sizes, args.seed, args.repeat):
        print(f"{edges} {seconds:.4f}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sparrange", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="print a random minimal SP-tree")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--leaves", type=int, required=True)
    p.add_argument("--max-fan", type=int, default=3)
    p.add_argument("--kmax", type=int, default=3)
    p.add_argument("--series-bias", type=float, default=0.5)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("decompose", help="minimal SP-tree of an edge list")
    p.add_argument("--edges", required=True)
    p.add_argument("--source")
    p.add_argument("--sink")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("arrange", help="arrange a tree or an edge list")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--tree")
    src.add_argument("--edges")
    p.add_argument("--source")
    p.add_argument("--sink")
    p.set_defaults(func=cmd_arrange)

    p = sub.add_parser("exact", help="exact minimum linear arrangement")
    p.add_argument("--edges", required=True)
    p.add_argument("--limit", type=int, default=20)
    p.set_defaults(func=cmd_exact)

    p = sub.add_parser("verify", help="check the cost bounds on one tree or a random sweep")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--tree")
    src.add_argument("--sweep", type=int, metavar="COUNT")
    p.add_argument("--opt", action="store_true", help="also check optimal-side bounds")
    p.add_argument("--max-nodes", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--shuffles", type=int, default=1)
    p.add_argument("--limit", type=int, default=20)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bench", help="time the arrangement of generated trees")
    p.add_argument("--sizes", required=True, help="comma-separated edge counts, e.g. 1e5,1e6")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--repeat", type=int, default=1)
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (GraphError, TreeError, NotSeriesParallel, TooLarge) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
