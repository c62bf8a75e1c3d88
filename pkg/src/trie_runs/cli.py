"""Command-line workbench: gen | runs | count | stats | bench | export-dot.

Exit codes: 0 success, 2 parse/usage error, 3 trie invariant violation,
4 internal assertion (e.g. a duplicate run confirmation).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from pathlib import Path

from .trie import CommonSuffixTrie, TrieError, compute_orders
from .suffix_order import build_suffix_order
from .lyndon import build_lyndon_table
from .range_index import GridIndex
from .runs import DuplicateRunError, RunsEngine, run_stats, _effective_threads
from .formats import (
    ParseError,
    edges_to_text,
    load_trie_text,
    runs_to_json,
    stats_to_json,
    trie_to_dot,
)
from .generators import KINDS, GeneratorSpec, generate_trie

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_INVARIANT = 3
EXIT_INTERNAL = 4


def _threads_from_args(args) -> int:
    # --parallel absent: sequential; bare --parallel: all cores; --parallel K: K
    if args.parallel is None:
        return 1
    want = args.parallel if args.parallel > 0 else (os.cpu_count() or 1)
    return _effective_threads(want)


def _read_input(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from None


def _write_output(path, text: str):
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


def _load_trie(args) -> CommonSuffixTrie:
    return load_trie_text(_read_input(args.input), args.format, args.direction)


def _add_input_flags(p: argparse.ArgumentParser):
    p.add_argument("--input", required=True, help="input file")
    p.add_argument("--format", choices=("strings", "edges"), default="edges")
    p.add_argument(
        "--direction",
        choices=("leafward", "rootward"),
        default="rootward",
        help="string reading direction; rootward reads each string leaf to root",
    )


def _stats_summary(stats: dict) -> str:
    se = stats["sum_exponents"]
    me = stats["max_exponent"]
    return (
        f"runs={stats['count']} edges={stats['edge_count']} "
        f"sum_exponents={se.numerator}/{se.denominator} "
        f"max_exponent={me.numerator}/{me.denominator} "
        f"lroot_occupancy={stats['sum_floor_exponent_minus_one']}"
    )


def cmd_runs(args) -> int:
    trie = _load_trie(args)
    threads = _threads_from_args(args)
    engine = RunsEngine(trie)
    records = engine.enumerate(threads)
    stats = run_stats(records, trie)
    payload = runs_to_json(records)
    if args.output:
        _write_output(args.output, payload)
        print(_stats_summary(stats))
    else:
        sys.stdout.write(payload)
        print(_stats_summary(stats), file=sys.stderr)
    return EXIT_OK


def cmd_count(args) -> int:
    trie = _load_trie(args)
    count, pairs = RunsEngine(trie).count(_threads_from_args(args))
    noun = "run" if count == 1 else "runs"
    print(f"{count} {noun}; shallow endpoints: [{', '.join(f'({v}, p={p})' for v, p in pairs)}]")
    return EXIT_OK


def cmd_stats(args) -> int:
    trie = _load_trie(args)
    orders = compute_orders(trie)
    sorder = build_suffix_order(trie)
    print(f"nodes={trie.n_nodes} edges={trie.edge_count} height={trie.max_sdepth} "
          f"sentinel={trie.sentinel}")
    if args.dump_suffix_order:
        lines = ["rank\tnode\tsdepth\tlcp_prev"]
        for r in range(1, trie.n_nodes + 1):
            v = int(sorder.sa0[r])
            lcp = sorder.lcp0(r) if r >= 2 else 0
            lines.append(f"{r}\t{v}\t{int(trie.sdepth[v])}\t{lcp}")
        _write_output(args.dump_suffix_order, "\n".join(lines) + "\n")
    if args.dump_lyndon:
        table = build_lyndon_table(trie, sorder)
        lines = ["node\tnsv0\tllen0\tnsv1\tllen1"]
        for v in range(1, trie.n_nodes + 1):
            lines.append(
                f"{v}\t{int(table.nsv(0)[v])}\t{int(table.llen(0)[v])}"
                f"\t{int(table.nsv(1)[v])}\t{int(table.llen(1)[v])}"
            )
        _write_output(args.dump_lyndon, "\n".join(lines) + "\n")
    return EXIT_OK


def cmd_gen(args) -> int:
    spec = GeneratorSpec(
        kind=args.kind, size=args.size, alphabet=args.alphabet,
        branching=args.branching, seed=args.seed,
    )
    try:
        trie = generate_trie(spec)
    except ValueError as exc:
        raise ParseError(str(exc)) from None
    _write_output(args.output, edges_to_text(trie))
    return EXIT_OK


def cmd_export_dot(args) -> int:
    trie = _load_trie(args)
    highlight = None
    if args.highlight is not None:
        records = RunsEngine(trie).enumerate(1)
        if not 0 <= args.highlight < len(records):
            raise ParseError(f"run index {args.highlight} out of range (have {len(records)})")
        highlight = records[args.highlight]
    _write_output(args.output, trie_to_dot(trie, highlight))
    return EXIT_OK


def _bench_one(spec: GeneratorSpec, threads: int) -> dict:
    t0 = time.perf_counter()
    trie = generate_trie(spec)
    t1 = time.perf_counter()
    orders = compute_orders(trie)
    sorder = build_suffix_order(trie)
    t2 = time.perf_counter()
    lyndon = build_lyndon_table(trie, sorder)
    t3 = time.perf_counter()
    grid = GridIndex(trie, orders, sorder)
    t4 = time.perf_counter()
    engine = RunsEngine(trie, orders=orders, suffix=sorder, lyndon=lyndon, grid=grid)
    records = engine.enumerate(threads)
    t5 = time.perf_counter()
    stats = run_stats(records, trie)
    n = trie.n_nodes
    return {
        "N": n,
        "t_gen": t1 - t0,
        "t_suffix": t2 - t1,
        "t_lyndon": t3 - t2,
        "t_grid": t4 - t3,
        "t_enumerate": t5 - t4,
        "t_total": t5 - t1,
        "lce_down_queries": grid.lce_down_queries,
        "range_queries": grid.range_queries,
        "runs": stats["count"],
        "runs_per_edge": stats["count"] / n,
        "sum_exponents": stats["sum_exponents"],
        "lroot_occupancy": stats["sum_floor_exponent_minus_one"],
    }


def cmd_bench(args) -> int:
    sizes = [int(s) for s in args.sizes.split(",") if s]
    if sizes != sorted(sizes):
        raise ParseError("--sizes must be ascending")
    thresholds = {}
    if args.thresholds:
        thresholds = json.loads(_read_input(args.thresholds))
    threads = _threads_from_args(args)
    header = (
        "N\tt_gen\tt_suffix\tt_lyndon\tt_grid\tt_enumerate\tt_total"
        "\tlce_down_queries\trange_queries\truns\truns_per_edge"
        "\tsum_exp_num\tsum_exp_den\tlroot_occupancy"
    )
    lines = [header]
    prev = None
    for size in sizes:
        spec = GeneratorSpec(
            kind=args.kind, size=size, alphabet=args.alphabet,
            branching=args.branching, seed=args.seed,
        )
        row = _bench_one(spec, threads)
        se = row["sum_exponents"]
        # the combinatorial bounds are hard guarantees, not calibration targets
        if row["runs"] >= row["N"]:
            raise AssertionError(
                f"run-count bound violated at N={row['N']}: {row['runs']} runs"
            )
        if row["lroot_occupancy"] > 2 * (row["N"] - 1):
            raise AssertionError(
                f"Lyndon-root accounting bound violated at N={row['N']}"
            )
        lines.append(
            f"{row['N']}\t{row['t_gen']:.4f}\t{row['t_suffix']:.4f}\t{row['t_lyndon']:.4f}"
            f"\t{row['t_grid']:.4f}\t{row['t_enumerate']:.4f}\t{row['t_total']:.4f}"
            f"\t{row['lce_down_queries']}\t{row['range_queries']}\t{row['runs']}"
            f"\t{row['runs_per_edge']:.6f}\t{se.numerator}\t{se.denominator}"
            f"\t{row['lroot_occupancy']}"
        )
        if prev is not None and thresholds.get("max_time_ratio"):
            ratio = row["t_total"] / max(prev["t_total"], 1e-9)
            allowed = thresholds["max_time_ratio"] * (row["N"] / prev["N"])
            if ratio > allowed:
                print(
                    f"WARN: time ratio {ratio:.1f} from N={prev['N']} to N={row['N']} "
                    f"exceeds advisory threshold {allowed:.1f}",
                    file=sys.stderr,
                )
        prev = row
    _write_output(args.output, "\n".join(lines) + "\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="trie-runs", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate a trie edge-list file")
    p.add_argument("--kind", choices=KINDS, default="random")
    p.add_argument("--size", type=int, default=100)
    p.add_argument("--alphabet", type=int, default=2)
    p.add_argument("--branching", type=float, default=0.1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--output", default=None)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("runs", help="enumerate all runs, write JSON, print stats")
    _add_input_flags(p)
    p.add_argument("--output", default=None)
    p.add_argument("--parallel", type=int, nargs="?", const=0, default=None,
                   help="confirm candidates in parallel (optionally capped thread count)")
    p.set_defaults(func=cmd_runs)

    p = sub.add_parser("count", help="count runs and list shallow endpoints")
    _add_input_flags(p)
    p.add_argument("--parallel", type=int, nargs="?", const=0, default=None)
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("stats", help="structure summaries and table dumps")
    _add_input_flags(p)
    p.add_argument("--dump-suffix-order", default=None, metavar="PATH")
    p.add_argument("--dump-lyndon", default=None, metavar="PATH")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("bench", help="timing table over generated tries")
    p.add_argument("--sizes", required=True, help="comma-separated ascending node counts")
    p.add_argument("--kind", choices=KINDS, default="random")
    p.add_argument("--alphabet", type=int, default=2)
    p.add_argument("--branching", type=float, default=0.1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--parallel", type=int, nargs="?", const=0, default=None)
    p.add_argument("--thresholds", default=None, help="advisory timing thresholds (JSON)")
    p.add_argument("--output", default=None)
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("export-dot", help="DOT graph, optionally highlighting one run")
    _add_input_flags(p)
    p.add_argument("--highlight", type=int, default=None, help="run index to mark")
    p.add_argument("--output", default=None)
    p.set_defaults(func=cmd_export_dot)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except TrieError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except (DuplicateRunError, AssertionError) as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
