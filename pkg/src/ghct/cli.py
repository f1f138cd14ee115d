"""Command-line front-end.

Subcommands: ``gen`` (graph and gadget generation), ``tree`` (cut-tree
construction with algorithm selection), ``verify`` (certify a tree, optionally
against a stored witness), ``query`` (bottleneck lookups on a tree file), and
``bench`` (instrumented runs over a corpus). Exit codes: 0 success/accept,
1 reject or invariant violation, 2 malformed input or usage error.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import time

from . import generators
from .bench import run_bench
from .certifier import (VerifyResult, WitnessFormatError, load_witness, prove,
                        save_witness, verify)
from .cuttree import (BuildStats, CutTree, all_pairs_matrix, build_cut_tree,
                      format_blocks, load_tree, save_tree, tree_query)
from .gadgets import build_3ov_final, build_3ov_intermediate, build_bmm_gadget
from .graphs import GraphError, ParseError, load_graph, save_graph
from .maxflow import FlowError


class CliError(Exception):
    """Usage or input error; maps to exit code 2."""


def _write_text(path: str, text: str) -> None:
    if path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _emit(args, payload: dict, text: str) -> None:
    if args.format == "json":
        print(json.dumps(payload, sort_keys=True))
    else:
        print(text)


def cmd_gen(args) -> int:
    rng = random.Random(args.seed)
    kind = args.kind
    if kind == "path":
        g = generators.gen_path(args.n)
    elif kind == "star":
        g = generators.gen_star(args.n)
    elif kind == "clique":
        g = generators.gen_clique(args.n)
    elif kind == "random-gnm":
        if args.m is None:
            raise CliError("random-gnm needs --m")
        g = generators.gen_gnm(args.n, args.m, rng)
    elif kind == "random-regular":
        if args.degree is None:
            raise CliError("random-regular needs --degree")
        g = generators.gen_random_regular(args.n, args.degree, rng)
    elif kind == "ov-gadget":
        if args.d is None:
            raise CliError("ov-gadget needs --d")
        ov = generators.gen_ov_instance(args.n, args.d, rng)
        builder = build_3ov_intermediate if args.variant == "intermediate" else build_3ov_final
        g = builder(ov).graph
    elif kind == "bmm-gadget":
        inst = generators.gen_bmm_instance(args.n, rng, density=args.density)
        g = build_bmm_gadget(inst.p, inst.q).graph
    else:
        raise CliError(f"unknown kind {kind!r}")
    save_graph(g, args.out)
    _emit(args, {"kind": kind, "n": g.n, "m": g.m, "out": args.out},
          f"wrote {kind} graph: n={g.n} m={g.m} -> {args.out}")
    return 0


def _stats_payload(stats: BuildStats) -> dict:
    return {
        "algorithm": stats.algorithm,
        "n": stats.n,
        "m": stats.m,
        "d": stats.d,
        "k": stats.k,
        "flow_calls": stats.flow_calls,
        "capped_calls": stats.capped_calls,
        "sum_flow_values": stats.sum_flow_values,
        "peak_aux_edges": stats.peak_aux_edges,
        "tree_weight_sum": stats.tree_weight_sum,
        "wall_time_s": round(stats.wall_time_s, 6),
    }


def cmd_tree(args) -> int:
    g = load_graph(args.graph)
    kwargs = {}
    if args.algo == "hybrid":
        if args.d is not None:
            kwargs["d"] = args.d
        elif args.d_policy == "sqrt-n16":
            from .cuttree import adjusted_hybrid_d
            kwargs["d"] = adjusted_hybrid_d(g)
    if args.algo == "partial":
        if args.k is None:
            raise CliError("partial needs --k")
        kwargs["k"] = args.k
    result, stats = build_cut_tree(g, args.algo, **kwargs)
    if args.algo == "partial":
        _write_text(args.out, format_blocks(result))
    else:
        save_tree(result, args.out)
    payload = _stats_payload(stats)
    payload["out"] = args.out
    _emit(args, payload,
          f"{args.algo}: n={stats.n} m={stats.m} flow_calls={stats.flow_calls} "
          f"capped_calls={stats.capped_calls} time={stats.wall_time_s:.4f}s -> {args.out}")
    return 0


def cmd_verify(args) -> int:
    g = load_graph(args.graph)
    t = load_tree(args.tree)
    if args.witness:
        w = load_witness(args.witness)
    else:
        w = prove(g, t, evidence=args.evidence)
        if args.witness_out:
            save_witness(w, args.witness_out)
    outcome: VerifyResult = verify(g, t, w)
    _emit(args, outcome.to_dict(),
          "accept" if outcome else f"reject: {outcome.check}: {outcome.detail}")
    return 0 if outcome else 1


def cmd_query(args) -> int:
    t = load_tree(args.tree)
    if args.all_pairs:
        mat = all_pairs_matrix(t)
        if args.format == "json":
            print(json.dumps({"matrix": mat}))
        else:
            for row in mat:
                print(" ".join(str(x) for x in row))
        return 0
    if args.s is None or args.t is None:
        raise CliError("query needs --s and --t, or --all-pairs")
    try:
        value, side = tree_query(t, args.s, args.t)
    except GraphError as exc:
        raise CliError(str(exc)) from exc
    _emit(args, {"s": args.s, "t": args.t, "value": value, "cut_side": sorted(side)},
          f"min-cut({args.s},{args.t}) = {value}; side of {args.s}: {sorted(side)}")
    return 0


def cmd_bench(args) -> int:
    rng = random.Random(args.seed)
    instances = []
    if args.graphs:
        for path in args.graphs:
            instances.append((path, load_graph(path)))
    else:
        if args.kind is None:
            raise CliError("bench needs graph files or --kind/--count")
        for i in range(args.count):
            if args.kind == "random-gnm":
                if args.m is None:
                    raise CliError("random-gnm needs --m")
                g = generators.gen_gnm(args.n, args.m, rng)
            elif args.kind == "random-regular":
                if args.degree is None:
                    raise CliError("random-regular needs --degree")
                g = generators.gen_random_regular(args.n, args.degree, rng)
            elif args.kind == "path":
                g = generators.gen_path(args.n)
            elif args.kind == "star":
                g = generators.gen_star(args.n)
            elif args.kind == "clique":
                g = generators.gen_clique(args.n)
            else:
                raise CliError(f"unknown kind {args.kind!r}")
            instances.append((f"{args.kind}-{i}", g))

    algorithms = [a.strip() for a in args.algos.split(",") if a.strip()]
    records, ok = run_bench(instances, algorithms, repeats=args.repeats,
                            d=args.d, k=args.k, d_policy=args.d_policy,
                            certify=args.certify, workers=args.workers)
    lines = "".join(json.dumps(r, sort_keys=True) + "\n" for r in records)
    if args.out:
        _write_text(args.out, lines)
    else:
        sys.stdout.write(lines)
    if not ok:
        print("invariant violations detected", file=sys.stderr)
        return 1
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ghct",
        description="Cut-equivalent tree toolkit: builders, certifier, gadgets, bench.")
    parser.add_argument("--seed", type=int, default=0, help="RNG seed (default 0)")
    parser.add_argument("--format", choices=("text", "json"), default="text")
    parser.add_argument("--workers", type=int, default=1,
                        help="parallel workers for bench (default 1)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate a graph or gadget file")
    p.add_argument("--kind", required=True,
                   choices=("random-gnm", "random-regular", "path", "star",
                            "clique", "ov-gadget", "bmm-gadget"))
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int)
    p.add_argument("--degree", type=int)
    p.add_argument("--d", type=int, help="vector dimension for ov-gadget")
    p.add_argument("--variant", choices=("final", "intermediate"), default="final")
    p.add_argument("--density", type=float, default=0.5)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("tree", help="build a cut-equivalent or partial tree")
    p.add_argument("graph")
    p.add_argument("--algo", choices=("gh", "gusfield", "hybrid", "partial"),
                   default="gh")
    p.add_argument("--d", type=int, help="degree threshold for hybrid")
    p.add_argument("--d-policy", choices=("sqrt", "sqrt-n16"), default="sqrt")
    p.add_argument("--k", type=int, help="connectivity bound for partial")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_tree)

    p = sub.add_parser("verify", help="certify a tree against its graph")
    p.add_argument("graph")
    p.add_argument("tree")
    p.add_argument("--witness", help="check this witness instead of proving")
    p.add_argument("--witness-out", help="store the produced witness")
    p.add_argument("--evidence", choices=("auto", "flows", "packing"), default="auto")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("query", help="bottleneck queries on a tree file")
    p.add_argument("tree")
    p.add_argument("--s", type=int)
    p.add_argument("--t", type=int)
    p.add_argument("--all-pairs", action="store_true")
    p.set_defaults(func=cmd_query)

    p = sub.add_parser("bench", help="instrumented runs over a corpus")
    p.add_argument("graphs", nargs="*", help="graph files; or use --kind/--count")
    p.add_argument("--kind",
                   choices=("random-gnm", "random-regular", "path", "star", "clique"))
    p.add_argument("--n", type=int, default=50)
    p.add_argument("--m", type=int)
    p.add_argument("--degree", type=int)
    p.add_argument("--count", type=int, default=5)
    p.add_argument("--algos", default="gh,gusfield,hybrid")
    p.add_argument("--d", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--d-policy", choices=("sqrt", "sqrt-n16"), default="sqrt")
    p.add_argument("--repeats", type=int, default=1)
    p.add_argument("--certify", action="store_true",
                   help="also prove+verify each constructed tree")
    p.add_argument("--out")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (CliError, ParseError, GraphError, FlowError, WitnessFormatError,
            OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
