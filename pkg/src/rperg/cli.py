"""Command line entry point: ``rperg learn | generate | metrics | compare``.

Exit codes: 0 success, 2 usage error (bad flags, missing files), 3 data
error (malformed edge list or grammar, failed generation).
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import os
import sys
from typing import List, Optional, Sequence

from . import metrics as M
from .baseline import chung_lu
from .compare import GENERATORS, run_compare
from .errors import ConvergenceError, EdgeListError, GenerationError, GrammarError, RpergError
from .generator import generate_ergm1, generate_ergm2
from .grammar import Grammar
from .graph import Graph, degree_sequence, largest_connected_component, read_edge_list, write_edge_list
from .learner import LearnConfig, learn, rule_histogram
from .seeding import np_rng, substream_seed

log = logging.getLogger("rperg")

EXIT_OK, EXIT_USAGE, EXIT_DATA = 0, 2, 3


class UsageError(Exception):
    pass


def _read_graph(path: str, lcc: bool = False) -> Graph:
    if not os.path.isfile(path):
        raise UsageError(f"no such file: {path}")
    g = read_edge_list(path).graph
    return largest_connected_component(g) if lcc else g


def _load_grammar(path: str) -> Grammar:
    if not os.path.isfile(path):
        raise UsageError(f"no such file: {path}")
    return Grammar.load(path)


def _write_rows(rows: List[list], out: Optional[str]) -> None:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerows(rows)
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(buf.getvalue())
    else:
        sys.stdout.write(buf.getvalue())


def _fmt(x: float) -> str:
    return repr(float(x))


def _report_rows(prefix: str, reports) -> List[list]:
    rows = []
    for r in reports:
        name = prefix + r.name
        for x, y in r.series:
            rows.append([name, _fmt(x), _fmt(y)])
        if r.scalar is not None:
            rows.append([name + "_mean", "", _fmt(r.scalar)])
    return rows


# -- commands ----------------------------------------------------------------

def cmd_learn(args) -> int:
    graphs = [_read_graph(p, args.lcc) for p in args.input]
    cfg = LearnConfig(virtual_both=args.virtual_both, seed=substream_seed(args.seed, "learn"),
                      randomize_splits=args.random_splits, jobs=args.jobs)
    gr = learn(graphs, cfg)
    if not gr.rules:
        raise GrammarError("no rules learned: input graphs are forests")
    gr.save(args.output)
    for desc, c in rule_histogram(gr)[: args.top]:
        print(f"{c:8d}  {desc}")
    print(f"{len(gr)} rules written to {args.output}")
    return EXIT_OK


def cmd_generate(args) -> int:
    os.makedirs(args.output_dir, exist_ok=True)
    if args.model == "chung-lu":
        if not args.degrees_from:
            raise UsageError("--model chung-lu needs --degrees-from")
        degs = degree_sequence(_read_graph(args.degrees_from))
        make = lambda i: chung_lu(degs, rng=np_rng(args.seed, f"gen-{i}"))
    else:
        if not args.grammar:
            raise UsageError(f"--model {args.model} needs --grammar")
        gr = _load_grammar(args.grammar)
        if args.model == "ergm2":
            if args.nodes is None:
                raise UsageError("--model ergm2 needs --nodes")
            make = lambda i: generate_ergm2(gr, args.nodes, seed=substream_seed(args.seed, f"gen-{i}"))
        else:
            if args.p is None:
                raise UsageError("--model ergm1 needs --p")
            make = lambda i: generate_ergm1(gr, args.p, seed=substream_seed(args.seed, f"gen-{i}"),
                                            max_edges=args.max_edges)
    for i in range(args.count):
        g = make(i)
        path = os.path.join(args.output_dir, f"{args.model}_{i:03d}.txt")
        write_edge_list(g, path)
        print(f"{path}: n={g.n} m={g.m}")
    return EXIT_OK


def cmd_metrics(args) -> int:
    g = _read_graph(args.graph, args.lcc)
    rows = [["metric", "x", "y"]]
    rows += _report_rows("", M.all_metrics(g, seed=substream_seed(args.seed, "metric"),
                                           hop_samples=args.hop_samples, scree_k=args.scree_k))
    if args.against:
        h = _read_graph(args.against, args.lcc)
        rows.append(["gcd", "", _fmt(M.gcd(g, h))])
        rows.append(["cosine_distance", "", _fmt(M.network_value_distance(
            largest_connected_component(g), largest_connected_component(h)))])
    _write_rows(rows, args.out)
    return EXIT_OK


def cmd_compare(args) -> int:
    gens = [s.strip() for s in args.generators.split(",") if s.strip()]
    bad = [s for s in gens if s not in GENERATORS]
    if bad or not gens:
        raise UsageError(f"unknown generator(s) {bad}; choose from {', '.join(GENERATORS)}")
    g = _read_graph(args.input, args.lcc)
    cfg = LearnConfig(virtual_both=args.virtual_both, seed=substream_seed(args.seed, "learn"))
    res = run_compare(g, gens, args.count, args.seed, args.jobs, cfg, args.p)
    rows = [["generator", "metric", "x", "y"]]
    for name, rep in res.original.items():
        rows += [["original", name, _fmt(x), _fmt(y)] for x, y in rep.series]
    for gen, series in res.mean_series.items():
        for name, pts in series.items():
            rows += [[gen, name, _fmt(x), _fmt(y)] for x, y in pts]
    if args.out:
        _write_rows(rows, args.out)
    summary = res.summary()
    if args.summary:
        with open(args.summary, "w", encoding="utf-8") as fh:
            json.dump({"summary": summary, "runs": [vars(r) for r in res.runs], "timings": res.timings}, fh, indent=1)
    print(f"original: n={g.n} m={g.m} clustering={res.original['clustering'].scalar:.4f}")
    print(f"{'generator':<14}{'gcd':>10}{'cosine':>12}{'clustering':>12}{'n':>9}{'m':>9}")
    for row in summary:
        print(f"{row['generator']:<14}{row['gcd']:>10.4f}{row['cosine']:>12.5f}{row['clustering']:>12.4f}"
              f"{row['n']:>9.0f}{row['m']:>9.0f}")
    return EXIT_OK


# -- parser ------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="master seed for all random streams")
    common.add_argument("--jobs", type=int, default=1, help="worker processes")
    common.add_argument("--config", help="JSON file with default values for these flags")
    common.add_argument("-v", "--verbose", action="count", default=0)

    p = argparse.ArgumentParser(prog="rperg", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("learn", parents=[common], help="learn a grammar from edge lists")
    s.add_argument("--input", nargs="+", required=True)
    s.add_argument("--output", required=True)
    s.add_argument("--virtual-both", action="store_true", help="copy the split edge into both halves")
    s.add_argument("--random-splits", action="store_true", help="pick separation pairs at random")
    s.add_argument("--lcc", action="store_true", help="keep only the largest connected component")
    s.add_argument("--top", type=int, default=10, help="rules to list on stdout")
    s.set_defaults(func=cmd_learn)

    s = sub.add_parser("generate", parents=[common], help="generate graphs")
    s.add_argument("--model", choices=("ergm1", "ergm2", "chung-lu"), default="ergm2")
    s.add_argument("--grammar")
    s.add_argument("--nodes", type=int)
    s.add_argument("--p", type=float)
    s.add_argument("--max-edges", type=int)
    s.add_argument("--degrees-from")
    s.add_argument("--count", type=int, default=1)
    s.add_argument("--output-dir", required=True)
    s.set_defaults(func=cmd_generate)

    s = sub.add_parser("metrics", parents=[common], help="compute metrics as CSV")
    s.add_argument("--graph", required=True)
    s.add_argument("--against")
    s.add_argument("--out")
    s.add_argument("--lcc", action="store_true")
    s.add_argument("--hop-samples", type=int, default=50)
    s.add_argument("--scree-k", type=int, default=50)
    s.set_defaults(func=cmd_metrics)

    s = sub.add_parser("compare", parents=[common], help="learn, generate and evaluate")
    s.add_argument("--input", required=True)
    s.add_argument("--generators", default="rperg,chung-lu")
    s.add_argument("--count", type=int, default=10)
    s.add_argument("--p", type=float, default=0.5, help="terminal probability for rperg-ergm1")
    s.add_argument("--virtual-both", action="store_true")
    s.add_argument("--lcc", action="store_true")
    s.add_argument("--out", help="mean series CSV")
    s.add_argument("--summary", help="JSON file with per-run scores")
    s.set_defaults(func=cmd_compare)
    return p


def _apply_config(parser: argparse.ArgumentParser, argv: Sequence[str]) -> argparse.Namespace:
    args = parser.parse_args(argv)
    if args.config:
        if not os.path.isfile(args.config):
            parser.error(f"no such config file: {args.config}")
        try:
            with open(args.config, encoding="utf-8") as fh:
                conf = json.load(fh)
        except json.JSONDecodeError as exc:
            parser.error(f"bad config file: {exc}")
        sub = parser._subparsers._group_actions[0].choices[args.command]
        known = {a.dest for a in sub._actions}
        unknown = set(conf) - known
        if unknown:
            parser.error(f"unknown config keys: {sorted(unknown)}")
        sub.set_defaults(**conf)
        args = parser.parse_args(argv)
    return args


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = _apply_config(parser, argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    level = logging.WARNING - 10 * min(args.verbose, 2)
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"rperg: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (EdgeListError, GrammarError, GenerationError, ConvergenceError, RpergError) as exc:
        print(f"rperg: data error: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
