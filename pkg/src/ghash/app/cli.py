from __future__ import annotations

import argparse
import io
import sys
from contextlib import redirect_stderr, redirect_stdout
from dataclasses import replace

from ghash.app.runner import bootstrap, run_bench
from ghash.core.config import GhashConfig
from ghash.core.errors import GraphHashError
from ghash.features.bench.service import (
    bench_config_from_raw,
    format_table,
    parse_methods,
    parse_rows,
    write_csv,
)
from ghash.features.color_refinement.service import refine
from ghash.features.digest.service import get_digest, to_hex
from ghash.features.generators.service import (
    isomorphic_copy,
    random_graph,
    random_regular_pair,
)
from ghash.features.generators.types import RandomGraphSpec
from ghash.features.graph_model.service import read_graph, write_graph
from ghash.features.isomorphism.service import (
    brute_force_isomorphic,
    hash_partitioned_isomorphic,
    oracle_isomorphic,
)
from ghash.features.isomorphism.types import IsoResult
from ghash.features.vertex_coder.service import VertexCoder
from ghash.features.vertex_coder.types import CoderBudget

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_ERROR = 2


class _ArgumentError(GraphHashError):
    pass


class _Parser(argparse.ArgumentParser):
    # usage errors follow the same exit-2 / one-line-stderr contract as domain errors
    def error(self, message: str) -> None:  # type: ignore[override]
        raise _ArgumentError(message)


def _build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ghash")
    parser.add_argument("--config", default=None, help="YAML config file")
    sub = parser.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    # ---- hash ----
    p_hash = sub.add_parser("hash", help="Print the graph digest")
    p_hash.add_argument("file")
    p_hash.add_argument("--labels", action="store_true", default=None)
    p_hash.add_argument("--per-vertex", action="store_true")
    p_hash.add_argument("--budget", type=int, default=None)
    p_hash.add_argument("--stats", action="store_true")

    # ---- compare ----
    p_cmp = sub.add_parser("compare", help="Decide isomorphism of two graphs")
    p_cmp.add_argument("file_a")
    p_cmp.add_argument("file_b")
    p_cmp.add_argument("--labels", action="store_true", default=None)
    p_cmp.add_argument("--method", choices=["hash", "brute", "oracle"], default="hash")
    p_cmp.add_argument("--stats", action="store_true")

    # ---- refine ----
    p_ref = sub.add_parser("refine", help="Print the stable color-refinement coloring")
    p_ref.add_argument("file")

    # ---- gen ----
    p_gen = sub.add_parser("gen", help="Generate graph files")
    gen_sub = p_gen.add_subparsers(dest="kind", required=True, parser_class=_Parser)

    g_rand = gen_sub.add_parser("random")
    g_rand.add_argument("--vertices", type=int, required=True)
    g_rand.add_argument("--edges", type=int, required=True)
    g_rand.add_argument("--vertex-label-max", type=int, default=9)
    g_rand.add_argument("--edge-label-max", type=int, default=9)
    g_rand.add_argument("--directed-fraction", type=float, default=1.0)
    g_rand.add_argument("--seed", type=int, required=True)
    g_rand.add_argument("-o", "--output", required=True)

    g_copy = gen_sub.add_parser("copy")
    g_copy.add_argument("file")
    g_copy.add_argument("--shift-labels", action="store_true")
    g_copy.add_argument("--seed", type=int, required=True)
    g_copy.add_argument("-o", "--output", required=True)

    g_reg = gen_sub.add_parser("regular-pair")
    g_reg.add_argument("--vertices", type=int, required=True)
    g_reg.add_argument("--degree", type=int, required=True)
    g_reg.add_argument("--seed", type=int, required=True)
    g_reg.add_argument("-o", "--output", nargs=2, required=True, metavar=("FILE_A", "FILE_B"))

    # ---- bench ----
    p_bench = sub.add_parser("bench", help="Brute force vs hashed search combinations")
    p_bench.add_argument("--rows", default=None, help="e.g. 5x5,10x10")
    p_bench.add_argument("--trials", type=int, default=None)
    p_bench.add_argument("--seed", type=int, default=None)
    p_bench.add_argument("--methods", default=None, help="e.g. brute,hashed")
    p_bench.add_argument("--csv", default=None)
    p_bench.add_argument("--db", default=None, help="DuckDB file to append trials to")

    return parser


def _budget(cfg: GhashConfig, override: int | None) -> CoderBudget:
    return CoderBudget(max_nodes=cfg.coder.max_nodes if override is None else override)


def _labels(cfg: GhashConfig, flag: bool | None) -> bool:
    return cfg.coder.hash_labels if flag is None else flag


def _cmd_hash(args: argparse.Namespace, cfg: GhashConfig) -> int:
    g = read_graph(args.file)
    coder = VertexCoder(
        g,
        hash_labels=_labels(cfg, args.labels),
        budget=_budget(cfg, args.budget),
        digest=get_digest(cfg.coder.digest),
    )

    nodes = 0
    peak = 0
    codes = []
    for v in g.vertices():
        codes.append(coder.vertex_hash(v))
        if coder.last_stats is not None:
            nodes += coder.last_stats.nodes_created
            peak = max(peak, coder.last_stats.peak_live)

    if args.per_vertex:
        for v, code in enumerate(codes):
            print(f"{v}\t{to_hex(code)}")
    else:
        print(to_hex(coder.digest(b"".join(sorted(codes)))))

    if args.stats:
        print(f"nodes={nodes}")
        print(f"peak_live={peak}")
    return EXIT_OK


def _cmd_compare(args: argparse.Namespace, cfg: GhashConfig) -> int:
    g = read_graph(args.file_a)
    h = read_graph(args.file_b)
    labels = _labels(cfg, args.labels)

    res: IsoResult
    if args.method == "oracle":
        res = oracle_isomorphic(
            g, h, respect_labels=labels, max_vertices=cfg.isomorphism.oracle_max_vertices
        )
    elif args.method == "brute":
        res = brute_force_isomorphic(g, h, respect_labels=labels)
    else:
        res = hash_partitioned_isomorphic(g, h, hash_labels=labels, budget=_budget(cfg, None))

    print(res.verdict)
    if args.stats:
        print(f"combinations={res.stats.combinations}")
    return EXIT_OK if res.isomorphic else EXIT_NEGATIVE


def _cmd_refine(args: argparse.Namespace, _cfg: GhashConfig) -> int:
    coloring = refine(read_graph(args.file))
    for v, color in enumerate(coloring.color_of):
        print(f"{v}\t{color}")
    print(f"classes={coloring.n_colors}")
    return EXIT_OK


def _cmd_gen(args: argparse.Namespace, cfg: GhashConfig) -> int:
    if args.kind == "random":
        spec = RandomGraphSpec(
            n_vertices=args.vertices,
            n_edges=args.edges,
            vertex_label_max=args.vertex_label_max,
            edge_label_max=args.edge_label_max,
            directed_fraction=args.directed_fraction,
        )
        write_graph(random_graph(spec, args.seed), args.output)
        return EXIT_OK

    if args.kind == "copy":
        copy, perm = isomorphic_copy(read_graph(args.file), args.seed, shift_labels=args.shift_labels)
        write_graph(copy, args.output)
        print("permutation=" + ",".join(str(x) for x in perm))
        return EXIT_OK

    first, second = random_regular_pair(
        args.vertices, args.degree, args.seed, cfg.generators.regular_max_retries
    )
    write_graph(first, args.output[0])
    write_graph(second, args.output[1])
    return EXIT_OK


def _cmd_bench(args: argparse.Namespace, cfg: GhashConfig) -> int:
    bench_cfg = bench_config_from_raw(cfg.raw)
    overrides: dict = {}
    if args.rows is not None:
        overrides["rows"] = parse_rows(args.rows)
    if args.trials is not None:
        overrides["trials_per_row"] = args.trials
    if args.seed is not None:
        overrides["seed"] = args.seed
    if args.methods is not None:
        overrides["methods"] = parse_methods(args.methods)
    if overrides:
        bench_cfg = replace(bench_cfg, **overrides)

    result = run_bench(cfg, bench_cfg, duckdb_path=args.db)
    report = result.report

    print(format_table(report))
    if args.csv is not None:
        write_csv(report, args.csv)
    if result.duckdb_path is not None:
        print(f"run_id={report.run_id} duckdb={result.duckdb_path}")

    if not report.all_isomorphic:
        print("error: a planted isomorphism was not found", file=sys.stderr)
        return EXIT_NEGATIVE
    return EXIT_OK


_COMMANDS = {
    "hash": _cmd_hash,
    "compare": _cmd_compare,
    "refine": _cmd_refine,
    "gen": _cmd_gen,
    "bench": _cmd_bench,
}


def main(argv: list[str] | None = None) -> int:
    try:
        args = _build_parser().parse_args(argv)
        cfg = bootstrap(args.config)
        return _COMMANDS[args.cmd](args, cfg)
    except (GraphHashError, OSError, ValueError, TypeError) as e:
        msg = " ".join(str(e).split()) or type(e).__name__
        print(f"error: {msg}", file=sys.stderr)
        return EXIT_ERROR


def run_cli(argv: list[str]) -> tuple[int, str, str]:
    """In-process CLI call capturing (exit code, stdout, stderr)."""
    out, err = io.StringIO(), io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        code = main(argv)
    return code, out.getvalue(), err.getvalue()


if __name__ == "__main__":
    raise SystemExit(main(sys.argv[1:]))
