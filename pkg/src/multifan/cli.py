"""Command-line front end.

Verbs:

* ``analyze``  Delta, core degree, chi', class, criticality, overfullness
* ``scan``     the same quantities over a whole corpus, as JSON lines
* ``verify``   run lemma checks over a corpus and write a witness report
* ``fan``      print the multi-fan machinery for one (graph, edge, coloring)
* ``gen``      write all graphs of given orders in graph6

Graphs are given as graph6 strings or family specs (``cycle:5``,
``petersen``), as positional arguments, with ``--input FILE``, or on stdin.

Exit codes: 0 success, 1 input error, 2 undecided within budget,
3 lemma-check failure.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from typing import IO, Iterable, Iterator, Sequence

from .chromatic import DEFAULT_BUDGET, DEFAULT_ORBIT_LIMIT, Undecided, chromatic_index, critical_edges, find_coloring
from .coloring import ColoringError, parse_coloring
from .enumeration import MAX_ENUM_N, enumerate_graphs
from .fans import (
    FanError,
    NonElementaryError,
    extend_multifan,
    fan_order,
    format_extended,
    format_fan,
    grow_multifan,
    maximum_multifan,
    pivot_pairs,
    stopping_colors,
)
from .graph import Graph, core_info, edge, is_family_spec, is_overfull, light_vertices, make_family
from .graph6 import Graph6Error, parse_graph6, read_graph6_lines, to_graph6_str
from .verify import CHECKS, ScanConfig, scan

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_UNDECIDED = 2
EXIT_FAIL = 3

DEFAULT_SEED = 20240607


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # usage errors are input errors; exit status 2 is reserved for "undecided"
    def error(self, message: str) -> None:  # type: ignore[override]
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def count_arg(text: str) -> int:
    """Positive integer, scientific notation allowed (``1e7``)."""
    try:
        value = float(text) if re.search(r"[eE.]", text) else int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if value != int(value) or value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    return int(value)


def checks_arg(text: str) -> tuple[str, ...]:
    names = tuple(x.strip() for x in text.split(",") if x.strip())
    unknown = [x for x in names if x not in CHECKS]
    if unknown or not names:
        raise argparse.ArgumentTypeError(f"unknown check(s) {', '.join(unknown) or '(none)'}; known: {', '.join(CHECKS)}")
    return names


_GEN_RE = re.compile(r"^\s*(?:(\d+)\s*(<=|<)\s*)?n\s*(<=|<|=|==)\s*(\d+)\s*$")


def parse_gen_spec(text: str) -> range:
    """Orders from ``n<=6``, ``n=5``, ``n<7`` or ``3<=n<=6``."""
    m = _GEN_RE.match(text)
    if not m:
        raise argparse.ArgumentTypeError(f"bad generator spec {text!r}; expected e.g. 'n<=6' or '3<=n<=6'")
    lo_s, lo_op, op, hi_s = m.groups()
    hi = int(hi_s)
    if op == "<":
        hi -= 1
    if op in ("=", "=="):
        if lo_s:
            raise argparse.ArgumentTypeError(f"bad generator spec {text!r}")
        lo = hi
    else:
        lo = 1 if lo_s is None else int(lo_s) + (1 if lo_op == "<" else 0)
    if hi > MAX_ENUM_N:
        raise argparse.ArgumentTypeError(f"generation supports n <= {MAX_ENUM_N}")
    if lo < 1 or lo > hi:
        raise argparse.ArgumentTypeError(f"empty order range in {text!r}")
    return range(lo, hi + 1)


# -- input handling ------------------------------------------------------


def _graph_token(token: str) -> Graph:
    if is_family_spec(token):
        try:
            return make_family(token)
        except ValueError as exc:
            raise InputError(str(exc)) from None
    try:
        return parse_graph6(token)
    except Graph6Error as exc:
        raise InputError(f"{token!r}: {exc}") from None


def _lines(args: argparse.Namespace, stdin: IO[str]) -> Iterable[str]:
    if getattr(args, "input", None):
        try:
            with open(args.input, encoding="ascii", errors="replace") as fh:
                return fh.read().splitlines()
        except OSError as exc:
            raise InputError(f"cannot read {args.input}: {exc}") from None
    return stdin.read().splitlines()


def read_graphs_strict(args: argparse.Namespace, stdin: IO[str]) -> list[Graph]:
    """Graphs from positionals, ``--input`` or stdin; the first parse error aborts."""
    if args.graphs:
        return [_graph_token(t) for t in args.graphs]
    out = []
    for lineno, item in read_graph6_lines(_lines(args, stdin)):
        if isinstance(item, Graph6Error):
            raise InputError(f"line {lineno}: {item}")
        out.append(item)
    if not out:
        raise InputError("no graphs given")
    return out


def corpus_items(args: argparse.Namespace, stdin: IO[str]) -> tuple[str, Iterator]:
    """Corpus for scan/verify; parse errors flow through to the report."""
    if args.gen:
        orders = args.gen
        connected = not args.all_graphs

        def gen() -> Iterator[Graph]:
            for n in orders:
                yield from enumerate_graphs(n, connected=connected)

        kind = "connected" if connected else "all"
        return f"gen:{kind}:n={orders.start}..{orders.stop - 1}", gen()
    if args.corpus:
        try:
            with open(args.corpus, encoding="ascii", errors="replace") as fh:
                lines = fh.read().splitlines()
        except OSError as exc:
            raise InputError(f"cannot read {args.corpus}: {exc}") from None
        return args.corpus, read_graph6_lines(lines)
    if args.graphs:
        return "args", iter([_graph_token(t) for t in args.graphs])
    return args.input or "stdin", read_graph6_lines(_lines(args, stdin))


# -- verbs ---------------------------------------------------------------


def analyze_block(g: Graph, budget: int) -> str:
    cert = chromatic_index(g, budget=budget)
    d = g.max_degree
    info = core_info(g)
    class2 = cert.chi_prime == d + 1
    crit = critical_edges(g, budget=budget, chi=cert.chi_prime) if class2 else []
    is_crit = class2 and g.is_connected() and len(crit) == g.m
    light = " ".join(map(str, sorted(light_vertices(g))))
    return "\n".join([
        f"graph {to_graph6_str(g)}",
        f"  n={g.n} m={g.m} Delta={d} delta={g.min_degree}",
        f"  core: {len(info.core_vertices)} vertices, min degree {info.core_min_degree}",
        f"  chi'={cert.chi_prime} ({cert.lower_bound_proof}, {cert.nodes} nodes)",
        f"  class={'2' if class2 else '1'} critical={str(is_crit).lower()} overfull={str(is_overfull(g)).lower()}",
        f"  critical edges: {len(crit)}/{g.m}",
        f"  light vertices: {light}",
    ])


def cmd_analyze(args: argparse.Namespace, out: IO[str], stdin: IO[str]) -> int:
    graphs = read_graphs_strict(args, stdin)
    status = EXIT_OK
    for g in graphs:
        if g.n == 0:
            out.write("graph with no vertices: nothing to analyze\n")
            continue
        try:
            out.write(analyze_block(g, args.budget) + "\n")
        except Undecided as exc:
            out.write(f"graph {to_graph6_str(g)}\n  undecided: {exc}\n")
            status = EXIT_UNDECIDED
    return status


def survey_record(g: Graph, budget: int) -> dict:
    rec: dict = {"type": "graph", "graph6": to_graph6_str(g), "n": g.n, "m": g.m}
    if g.n == 0:
        return rec
    d = g.max_degree
    rec.update(delta=d, overfull=is_overfull(g))
    try:
        cert = chromatic_index(g, budget=budget)
    except Undecided as exc:
        rec.update(undecided=True, nodes=exc.nodes)
        return rec
    class2 = cert.chi_prime == d + 1
    crit = critical_edges(g, budget=budget, chi=cert.chi_prime) if class2 else []
    rec.update(
        chi=cert.chi_prime,
        cls=2 if class2 else 1,
        critical=class2 and g.is_connected() and len(crit) == g.m,
        core_min_degree=core_info(g).core_min_degree,
    )
    return rec


def cmd_scan(args: argparse.Namespace, out: IO[str], stdin: IO[str]) -> int:
    corpus_id, items = corpus_items(args, stdin)
    tally = {"graphs": 0, "input_errors": 0, "undecided": 0, "class2": 0, "critical": 0, "overfull": 0,
             "overfull_class1": 0}
    with open(args.out, "w") as sink:
        sink.write(json.dumps({"type": "header", "corpus": corpus_id, "budget": args.budget}) + "\n")
        for item in items:
            lineno = None
            if isinstance(item, tuple):
                lineno, item = item
            if isinstance(item, Graph6Error):
                tally["input_errors"] += 1
                sink.write(json.dumps({"type": "input_error", "line": lineno, "error": str(item)}) + "\n")
                out.write(f"input error at line {lineno}: {item}\n")
                continue
            rec = survey_record(item, args.budget)
            tally["graphs"] += 1
            if rec.get("undecided"):
                tally["undecided"] += 1
            else:
                tally["class2"] += rec.get("cls") == 2
                tally["critical"] += bool(rec.get("critical"))
                tally["overfull"] += bool(rec.get("overfull"))
                tally["overfull_class1"] += bool(rec.get("overfull")) and rec.get("cls") == 1
            sink.write(json.dumps(rec) + "\n")
        sink.write(json.dumps({"type": "summary", **tally}) + "\n")
    out.write(f"corpus {corpus_id}: " + ", ".join(f"{k}={v}" for k, v in tally.items()) + "\n")
    if tally["undecided"]:
        return EXIT_UNDECIDED
    return EXIT_INPUT if tally["input_errors"] else EXIT_OK


def cmd_verify(args: argparse.Namespace, out: IO[str], stdin: IO[str]) -> int:
    corpus_id, items = corpus_items(args, stdin)
    config = ScanConfig(budget=args.budget, limit=args.limit, restarts=args.restarts, seed=args.seed,
                        scope=args.scope, jobs=args.jobs)
    with open(args.out, "w") as sink:
        rep = scan(items, args.checks, config, corpus_id=corpus_id, sink=sink)
    out.write(rep.format_table() + "\n")
    for msg in rep.input_errors:
        out.write(f"input error: {msg}\n")
    shown = 0
    for o in rep.non_pass:
        if o.verdict == "fail" and shown < 20:
            out.write(f"FAIL {o.check_id} {o.graph6} {json.dumps(o.params)}: {o.reason}\n")
            shown += 1
    out.write(f"report written to {args.out}\n")
    if rep.fails:
        out.write(f"{rep.fails} failing instance(s)\n")
        return EXIT_FAIL
    if rep.undecided:
        return EXIT_UNDECIDED
    return EXIT_INPUT if rep.input_errors else EXIT_OK


def cmd_fan(args: argparse.Namespace, out: IO[str], stdin: IO[str]) -> int:
    graphs = read_graphs_strict(args, stdin)
    if len(graphs) != 1:
        raise InputError(f"fan takes exactly one graph, got {len(graphs)}")
    g = graphs[0]
    try:
        u, v = (int(x) for x in args.edge.split(","))
        e = edge(u, v)
    except ValueError:
        raise InputError(f"bad edge {args.edge!r}; expected 'u,v'") from None
    if e not in g.edges:
        raise InputError(f"edge {e} is not in the graph")
    r = e[0] if args.center is None else args.center
    if r not in e:
        raise InputError(f"center {r} is not an endpoint of {e}")
    d = g.max_degree
    if args.coloring in ("search", "max"):
        cert = chromatic_index(g, budget=args.budget)
        crit = cert.chi_prime == d + 1 and e in critical_edges(g, budget=args.budget, chi=cert.chi_prime)
        if not crit:
            out.write(f"edge {e[0]}-{e[1]} is not critical; no Delta-coloring of G-e is needed\n")
            return EXIT_UNDECIDED
        if args.coloring == "max":
            mf = maximum_multifan(g, e, r, budget=args.budget, seed=args.seed, check_critical=False)
            c = mf.coloring
            out.write(f"maximum fan size {mf.size} ({'certified' if mf.certified else 'best found'}, "
                      f"{mf.colorings_examined} colorings)\n")
        else:
            found, _ = find_coloring(g, d, skip=e, budget=args.budget)
            assert found is not None  # e is critical
            c = found.canonical()
    else:
        try:
            with open(args.coloring) as fh:
                text = fh.read()
        except OSError as exc:
            raise InputError(f"cannot read {args.coloring}: {exc}") from None
        try:
            c = parse_coloring(text, g, args.palette)
        except ColoringError as exc:
            raise InputError(f"improper coloring: {exc}") from None
        if c.uncolored_edge != e:
            raise InputError(f"coloring must leave exactly the edge {e} uncolored")
    fan = grow_multifan(c, r)
    try:
        order = fan_order(fan)
    except NonElementaryError as exc:
        out.write(format_fan(fan) + "\n")
        out.write(f"fan is not elementary: {exc}\n")
        return EXIT_FAIL
    st = stopping_colors(c, r, fan)
    out.write(format_fan(fan, order, st) + "\n")
    for s_h, beta in pivot_pairs(c, fan):
        out.write(format_extended(extend_multifan(c, fan, s_h, beta)) + "\n")
    return EXIT_OK


def cmd_gen(args: argparse.Namespace, out: IO[str], stdin: IO[str]) -> int:
    sink = open(args.out, "w") if args.out else out
    count = 0
    try:
        for n in args.spec:
            for g in enumerate_graphs(n, connected=not args.all_graphs):
                sink.write(to_graph6_str(g) + "\n")
                count += 1
    finally:
        if args.out:
            sink.close()
    print(f"{count} graphs", file=sys.stderr)
    return EXIT_OK


# -- parser --------------------------------------------------------------


def _default_jobs() -> int:
    try:
        return max(1, len(os.sched_getaffinity(0)))
    except AttributeError:  # pragma: no cover - non-Linux
        return os.cpu_count() or 1


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="multifan", description="Edge-coloring fan machinery and lemma checks on small graphs.")
    sub = p.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    def graph_inputs(sp: argparse.ArgumentParser) -> None:
        sp.add_argument("graphs", nargs="*", help="graph6 strings or family specs (cycle:5, petersen, ...)")
        sp.add_argument("--input", help="file of graph6 lines (default: stdin)")

    def budget(sp: argparse.ArgumentParser) -> None:
        sp.add_argument("--budget", type=count_arg, default=DEFAULT_BUDGET, help="search node budget (1e7 style ok)")

    def corpus(sp: argparse.ArgumentParser) -> None:
        graph_inputs(sp)
        sp.add_argument("--gen", type=parse_gen_spec, help="generate the corpus, e.g. 'n<=6'")
        sp.add_argument("--corpus", help="graph6 corpus file")
        sp.add_argument("--all-graphs", action="store_true", help="with --gen, include disconnected graphs")

    a = sub.add_parser("analyze", help="chi', class, criticality and overfullness")
    graph_inputs(a)
    budget(a)

    s = sub.add_parser("scan", help="analyze a corpus into JSON lines")
    corpus(s)
    budget(s)
    s.add_argument("--out", default="scan.jsonl")

    v = sub.add_parser("verify", help="run lemma checks over a corpus")
    corpus(v)
    budget(v)
    v.add_argument("--checks", type=checks_arg, default=("vf1", "vf2", "val"), help=f"comma list from {','.join(CHECKS)}")
    v.add_argument("--limit", type=count_arg, default=DEFAULT_ORBIT_LIMIT, help="max coloring orbits per edge")
    v.add_argument("--restarts", type=count_arg, default=512, help="random restarts for uncertified maximum fans")
    v.add_argument("--seed", type=int, default=DEFAULT_SEED)
    v.add_argument("--scope", choices=("critical", "class2"), default="critical",
                   help="instances from critical graphs only, or from every critical edge of a class 2 graph")
    v.add_argument("--jobs", type=count_arg, default=_default_jobs())
    v.add_argument("--out", default="report.jsonl")

    f = sub.add_parser("fan", help="print the multi-fan structures for one edge")
    graph_inputs(f)
    budget(f)
    f.add_argument("--edge", required=True, help="uncolored edge 'u,v'")
    f.add_argument("--center", type=int, help="fan center (default: smaller endpoint)")
    f.add_argument("--coloring", default="search",
                   help="coloring file, 'search' (first coloring found) or 'max' (a maximum-fan coloring)")
    f.add_argument("--palette", type=count_arg, help="palette size for a coloring file without 'palette:' line")
    f.add_argument("--seed", type=int, default=DEFAULT_SEED)

    gn = sub.add_parser("gen", help="write all graphs of the given orders as graph6")
    gn.add_argument("spec", type=parse_gen_spec, help="orders, e.g. 'n<=6' or 'n=7'")
    gn.add_argument("--all-graphs", action="store_true", help="include disconnected graphs")
    gn.add_argument("--out", help="output file (default: stdout)")
    return p


_VERBS = {"analyze": cmd_analyze, "scan": cmd_scan, "verify": cmd_verify, "fan": cmd_fan, "gen": cmd_gen}


def main(argv: Sequence[str] | None = None, *, out: IO[str] | None = None, stdin: IO[str] | None = None) -> int:
    out = out or sys.stdout
    stdin = stdin or sys.stdin
    args = build_parser().parse_args(argv)
    if args.verb in ("scan", "verify") and sum(map(bool, (args.gen, args.corpus, args.graphs or args.input))) > 1:
        print("multifan: give only one of --gen, --corpus, or graphs/--input", file=sys.stderr)
        return EXIT_INPUT
    try:
        return _VERBS[args.verb](args, out, stdin)
    except InputError as exc:
        print(f"multifan: input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except Undecided as exc:
        print(f"multifan: undecided: {exc}", file=sys.stderr)
        return EXIT_UNDECIDED
    except FanError as exc:
        print(f"multifan: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
