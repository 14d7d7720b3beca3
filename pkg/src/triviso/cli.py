"""Command line front end.

    triviso iso A.txt B.txt [--mapping]
    triviso aut A.txt --edge 1 2
    triviso phylo T1.nwk T2.nwk
    triviso bench --mode isomorphic --sizes 50 100 --seed 1 --reps 3

Exit codes: 0 = isomorphic (or success), 1 = not isomorphic, 2 = bad input.
"""

from __future__ import annotations

import argparse
import logging
import sys

from .autengine import aut_e
from .bench import MODES, GenerationFailed, run_bench
from .graphcore import GraphError, read_edge_list, require_valid
from .group import group_order
from .iso import isomorphic
from .phylo import PhyloError, parse_newick, phylo_isomorphic

EXIT_YES, EXIT_NO, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def _load_graph(path):
    try:
        return read_edge_list(path)
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror or exc}") from None
    except GraphError as exc:
        raise InputError(f"{path}: {exc}") from None


def cmd_iso(args) -> int:
    g1, g2 = _load_graph(args.file1), _load_graph(args.file2)
    try:
        ok, mapping = isomorphic(g1, g2, want_mapping=args.mapping, mode=args.engine,
                                 prefilter=not args.no_prefilter)
    except GraphError as exc:
        raise InputError(str(exc)) from None
    if ok and args.mapping:
        for v, w in enumerate(mapping):
            print(f"{v + 1} --> {w + 1}")
    print("True" if ok else "False")
    return EXIT_YES if ok else EXIT_NO


def cmd_aut(args) -> int:
    g = _load_graph(args.file)
    u, v = args.edge
    if not (1 <= u <= g.n and 1 <= v <= g.n) or not g.has_edge(u - 1, v - 1):
        raise InputError(f"edge ({u}, {v}) is not in the graph")
    try:
        require_valid(g, 3)
    except GraphError as exc:
        raise InputError(str(exc)) from None
    gens = [s for s in aut_e((g, (u - 1, v - 1)), mode=args.engine).generators if not s.is_identity()]
    if gens:
        for s in gens:
            print(s.to_cycles())
    else:
        print("identity")
    print(f"order {group_order(gens, g.n)}")
    return EXIT_YES


def _load_tree(path):
    try:
        with open(path) as fh:
            return parse_newick(fh.read())
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror or exc}") from None
    except PhyloError as exc:
        raise InputError(f"{path}: {exc}") from None


def cmd_phylo(args) -> int:
    t1, t2 = _load_tree(args.file1), _load_tree(args.file2)
    try:
        phi = phylo_isomorphic(t1, t2)
    except PhyloError as exc:
        raise InputError(str(exc)) from None
    if phi is None:
        print("False")
        return EXIT_NO
    for v, w in enumerate(phi):
        print(f"{v + 1} --> {w + 1}")
    print("True")
    return EXIT_YES


def cmd_bench(args) -> int:
    for n in args.sizes:
        if n <= 0 or n % 2 or n < 4:
            raise InputError(f"size {n}: sizes must be even integers of at least 4")
    print("n,mode,seed,rep,seconds,verdict")
    try:
        for row in run_bench(args.sizes, args.mode, args.seed, args.reps,
                             {"mode": args.engine}):
            print(row.csv(with_time=not args.no_time), flush=True)
    except GenerationFailed as exc:
        raise InputError(str(exc)) from None
    return EXIT_YES


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="triviso", description="Isomorphism of graphs with valence at most 3.")
    p.add_argument("-v", "--verbose", action="store_true", help="debug logging on stderr")
    sub = p.add_subparsers(dest="command", required=True)

    def engine(sp):
        sp.add_argument("--engine", choices=("direct", "tree"), default="direct",
                        help="recursion guide for the color search (default: direct)")

    sp = sub.add_parser("iso", help="test two edge-list graphs for isomorphism")
    sp.add_argument("file1")
    sp.add_argument("file2")
    sp.add_argument("--mapping", action="store_true", help="print the vertex mapping before the verdict")
    sp.add_argument("--no-prefilter", action="store_true", help="try every edge e2, skipping the layer-profile check")
    engine(sp)
    sp.set_defaults(func=cmd_iso)

    sp = sub.add_parser("aut", help="generators of the automorphisms fixing an edge")
    sp.add_argument("file")
    sp.add_argument("--edge", nargs=2, type=int, required=True, metavar=("U", "V"))
    engine(sp)
    sp.set_defaults(func=cmd_aut)

    sp = sub.add_parser("phylo", help="test two Newick trees for leaf-labelled isomorphism")
    sp.add_argument("file1")
    sp.add_argument("file2")
    sp.set_defaults(func=cmd_phylo)

    sp = sub.add_parser("bench", help="time random pairs and print CSV")
    sp.add_argument("--sizes", nargs="+", type=int, required=True)
    sp.add_argument("--mode", choices=MODES, default="isomorphic")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--reps", type=int, default=1)
    sp.add_argument("--no-time", action="store_true", help="leave the seconds column empty (byte-stable output)")
    engine(sp)
    sp.set_defaults(func=cmd_bench)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_YES
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(name)s: %(message)s")
    if getattr(args, "reps", 1) < 1:
        print("error: --reps must be positive", file=sys.stderr)
        return EXIT_INPUT
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
