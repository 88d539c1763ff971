"""Command-line front end.

Exit codes: 0 success (and YES for ``decide``), 1 NO for ``decide`` or a
failed audit, 2 usage/IO/format errors, 3 solver precondition errors.
"""

from __future__ import annotations

import argparse
import sys
import time
from typing import TextIO

from . import analysis
from .branch import KappaWeights, MuWeights, decide_k, solve_max
from .dp import dp_solve, dp_state_count
from .errors import (
    BudgetExceededError,
    DegreeBoundError,
    GraphFormatError,
    InfeasibleWeightsError,
    InvalidGraphError,
    PreconditionError,
)
from .graph import (
    GENERATOR_KINDS,
    Graph,
    SpanningTree,
    detect_format,
    format_graph,
    generate,
    internal_count,
    parse_graph,
)
from .oracle import DEFAULT_BUDGET, oracle_mist

EXIT_OK, EXIT_NO, EXIT_USAGE, EXIT_PRECONDITION = 0, 1, 2, 3

METHODS = ("auto", "dp", "branch", "oracle")


class UsageError(Exception):
    pass


def _read_graph(path: str, fmt: str, stdin: TextIO) -> tuple[Graph, int]:
    """Parse the input; returns the graph and the vertex offset for output."""
    try:
        text = stdin.read() if path == "-" else open(path, encoding="utf-8").read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc
    if fmt == "auto":
        fmt = detect_format(text)
    g = parse_graph(text, fmt)
    return g, 1 if fmt == "dimacs" else 0


def _print_tree(t: SpanningTree, base: int, out: TextIO) -> None:
    for u, v in sorted(t.tree_edges):
        print(f"tree {u + base} {v + base}", file=out)


def _solve(g: Graph, method: str, budget: int, hp_precheck: bool = True) -> tuple[int, SpanningTree, int]:
    """Returns (value, tree, work counter) for one method."""
    if method == "auto":
        method = "branch" if g.max_degree <= 3 else "dp"
    if method == "branch":
        if g.max_degree > 3:
            raise DegreeBoundError(f"method branch needs max degree <= 3, got {g.max_degree}")
        res = solve_max(g, hp_precheck=hp_precheck)
        return res.value, res.tree, res.stats.nodes
    if method == "dp":
        value, tree = dp_solve(g, want_tree=True)
        return value, tree, dp_state_count(g) if g.n >= 2 else 0
    if method == "oracle":
        res = oracle_mist(g, limit=budget)
        return res.value, res.witness, res.trees_enumerated
    raise UsageError(f"unknown method {method!r}")


def cmd_solve(args, out, stdin) -> int:
    g, base = _read_graph(args.input, args.format, stdin)
    value, tree, _ = _solve(g, args.method, args.budget, not getattr(args, "no_hp_precheck", False))
    assert internal_count(tree) == value
    print(f"value {value}", file=out)
    _print_tree(tree, base, out)
    return EXIT_OK


def cmd_oracle(args, out, stdin) -> int:
    args.method = "oracle"
    return cmd_solve(args, out, stdin)


def cmd_decide(args, out, stdin) -> int:
    g, base = _read_graph(args.input, args.format, stdin)
    res = decide_k(g, args.k, use_kappa_stop=not args.no_kappa_stop)
    if res.answer:
        print("YES", file=out)
        _print_tree(res.certificate, base, out)
        return EXIT_OK
    print("NO", file=out)
    return EXIT_NO


def cmd_gen(args, out, stdin) -> int:
    g = generate(args.kind, args.n, args.seed, args.max_degree)
    out.write(format_graph(g, args.format))
    return EXIT_OK


def _parse_weights(text: str | None, count: int) -> list[float]:
    if text is None:
        return []
    try:
        values = [float(x) for x in text.split(",")]
    except ValueError as exc:
        raise UsageError(f"bad weight list {text!r}") from exc
    if len(values) != count:
        raise UsageError(f"expected {count} comma-separated weights, got {len(values)}")
    return values


def cmd_analyze(args, out, stdin) -> int:
    mu_w = MuWeights(*_parse_weights(args.mu_weights, 4))
    kap_w = KappaWeights(*_parse_weights(args.kappa_weights, 3))
    if args.simple_w is not None:
        kap_w = KappaWeights(kap_w.w1, kap_w.w2, kap_w.w3, args.simple_w)
    for d in range(3, 9):
        print(f"table1 {d} {analysis.table1_bound(d):.4f}", file=out)
    for d in range(3, 9):
        print(f"beta {d} {analysis.beta(d):.4f}", file=out)
    for d in range(3, 9):
        print(f"epsilon {d} {analysis.epsilon(d):.4f}", file=out)
    print(f"naive {analysis.naive_bound():.4f}", file=out)
    for family, w in (("exact", mu_w), ("param_detailed", kap_w), ("param_simple", kap_w)):
        tau, label = analysis.verify_bound(family, w)
        print(f"bound {family} {tau:.4f} {label}", file=out)
    exact, _ = analysis.verify_bound("exact", mu_w)
    print(f"kernel {analysis.kernel_bound(round(exact, 4)):.4f}", file=out)
    return EXIT_OK


def cmd_audit(args, out, stdin) -> int:
    g, _ = _read_graph(args.input, args.format, stdin)
    if args.k is None:
        rep = analysis.audit_run(g, "max")
    else:
        rep = analysis.audit_run(g, "decide", args.k, use_kappa_stop=not args.no_kappa_stop)
    print(f"mode {rep.mode}", file=out)
    print(f"result {rep.result}", file=out)
    for name, table in (("mu", rep.rule_mu), ("kappa", rep.rule_kappa)):
        for rule in sorted(table):
            lo, hi = table[rule]
            print(f"delta {name} {rule} {lo:+.4f} {hi:+.4f}", file=out)
    print(f"rule_applications {rep.rule_applications}", file=out)
    print(f"branch_nodes {rep.branch_nodes}", file=out)
    print(f"search_nodes {rep.search_nodes}", file=out)
    print(f"ratio {rep.ratio:.6g}", file=out)
    print(f"violations {rep.violations}", file=out)
    for rule, d in rep.mu_violations + rep.kappa_violations:
        print(f"violation rule {rule} {d:+.4f}", file=out)
    for case, d in rep.branch_violations:
        print(f"violation branch {case} {d:+.4f}", file=out)
    return EXIT_OK if rep.violations == 0 else EXIT_NO


def _parse_range(text: str) -> list[int]:
    try:
        if "-" in text:
            lo, hi = (int(x) for x in text.split("-", 1))
            return list(range(lo, hi + 1))
        return [int(x) for x in text.split(",")]
    except ValueError as exc:
        raise UsageError(f"bad size list {text!r}") from exc


def cmd_bench(args, out, stdin) -> int:
    methods = args.methods.split(",")
    for m in methods:
        if m not in METHODS:
            raise UsageError(f"unknown method {m!r}")
    print("n\tseed\tmethod\tvalue\tnodes\tms\tratio", file=out)
    for n in _parse_range(args.sizes):
        for seed in range(args.seed, args.seed + args.seeds):
            g = generate(args.kind, n, seed)
            for m in methods:
                t0 = time.perf_counter()
                value, _, nodes = _solve(g, m, args.budget, not args.no_hp_precheck)
                ms = (time.perf_counter() - t0) * 1000
                ratio = nodes / analysis.EXACT_BASE ** n
                print(f"{n}\t{seed}\t{m}\t{value}\t{nodes}\t{ms:.3f}\t{ratio:.6g}", file=out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="mist", description="Maximum internal spanning tree tools.")
    sub = p.add_subparsers(dest="command", required=True)

    def graph_input(sp):
        sp.add_argument("input", nargs="?", default="-", help="graph file, '-' for stdin")
        sp.add_argument("--format", choices=("auto", "dimacs", "edgelist"), default="auto")

    sp = sub.add_parser("solve", help="maximum internal spanning tree")
    graph_input(sp)
    sp.add_argument("--method", choices=METHODS, default="auto")
    sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="oracle node budget")
    sp.add_argument("--no-hp-precheck", action="store_true", help="always run the branching search")
    sp.set_defaults(func=cmd_solve)

    sp = sub.add_parser("oracle", help="brute-force optimum")
    graph_input(sp)
    sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    sp.set_defaults(func=cmd_oracle)

    sp = sub.add_parser("decide", help="is there a tree with >= k internal vertices")
    graph_input(sp)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--no-kappa-stop", action="store_true")
    sp.set_defaults(func=cmd_decide)

    sp = sub.add_parser("gen", help="generate a graph")
    sp.add_argument("kind", choices=GENERATOR_KINDS)
    sp.add_argument("--n", type=int, default=10)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--max-degree", type=int, default=None)
    sp.add_argument("--format", choices=("dimacs", "edgelist"), default="dimacs")
    sp.set_defaults(func=cmd_gen)

    sp = sub.add_parser("analyze", help="running-time constants")
    sp.add_argument("--mu-weights", help="w2,w3_1,w3_2,w3_2star")
    sp.add_argument("--kappa-weights", help="w1,w2,w3")
    sp.add_argument("--simple-w", type=float, default=None)
    sp.set_defaults(func=cmd_analyze)

    sp = sub.add_parser("audit", help="check measure monotonicity on one input")
    graph_input(sp)
    sp.add_argument("--k", type=int, default=None, help="audit decision mode with this k")
    sp.add_argument("--no-kappa-stop", action="store_true")
    sp.set_defaults(func=cmd_audit)

    sp = sub.add_parser("bench", help="TSV timings over a size sweep")
    sp.add_argument("--sizes", default="6-14", help="'lo-hi' or comma list")
    sp.add_argument("--seeds", type=int, default=3, help="instances per size")
    sp.add_argument("--seed", type=int, default=0, help="first seed")
    sp.add_argument("--kind", choices=GENERATOR_KINDS, default="random_subcubic")
    sp.add_argument("--methods", default="branch,dp")
    sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    sp.add_argument("--no-hp-precheck", action="store_true", help="always run the branching search")
    sp.set_defaults(func=cmd_bench)
    return p


def main(argv: list[str] | None = None, out: TextIO | None = None, err: TextIO | None = None,
         stdin: TextIO | None = None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    stdin = stdin or sys.stdin
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        return args.func(args, out, stdin)
    except (UsageError, GraphFormatError, InvalidGraphError, InfeasibleWeightsError) as exc:
        print(f"mist: error: {exc}", file=err)
        return EXIT_USAGE
    except (PreconditionError, BudgetExceededError) as exc:
        print(f"mist: error: {exc}", file=err)
        return EXIT_PRECONDITION


if __name__ == "__main__":
    sys.exit(main())
