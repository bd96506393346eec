"""Command line front end.

Exit status: 0 ok, 2 model parse error, 3 guard violation (cyclic attractor
or non-fixed-point states), 4 size cap or cycle budget exceeded, 5 bad
arguments. Node indices in JSON output are 1-based.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from importlib import resources
from itertools import combinations

from . import dynamics, igraph, reprog
from .core import MAX_NODES, BooleanNetwork
from .errors import (
    CycleBudgetExceeded,
    DimensionError,
    GuardViolation,
    NetworkParseError,
    StateParseError,
)
from .igraph import NEG, POS

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_GUARD = 3
EXIT_CAP = 4
EXIT_ARGS = 5


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ARGS, f"{self.prog}: error: {message}\n")


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("model", help="network file")
    common.add_argument("--max-n", type=int, default=None,
                        help=f"node cap for explicit-state analysis (default {MAX_NODES}; oracle {reprog.ORACLE_MAX_N})")
    common.add_argument("--cycle-budget", type=int, default=igraph.DEFAULT_CYCLE_BUDGET)

    p = _Parser(prog="bnreprog", description="Reprogramming determinants of Boolean networks")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def fmt(sp, choices, default):
        sp.add_argument("--format", choices=choices, default=default)

    fmt(sub.add_parser("check", parents=[common], help="validate a model and its assumptions"),
        ["text", "json"], "text")
    fmt(sub.add_parser("ig", parents=[common], help="interaction graph"), ["dot", "json", "text"], "dot")
    fmt(sub.add_parser("stg", parents=[common], help="asynchronous transition graph"),
        ["dot", "json", "text"], "dot")
    fmt(sub.add_parser("fixed-points", parents=[common]), ["text", "json"], "text")
    fmt(sub.add_parser("attractors", parents=[common]), ["text", "json"], "text")

    rp = sub.add_parser("reprogram", parents=[common], help="compute reprogramming determinants")
    fmt(rp, ["text", "json"], "text")
    rp.add_argument("--from", dest="source", required=True, help="source fixed point, e.g. 0000")
    rp.add_argument("--to", dest="target", required=True, help="target fixed point")
    rp.add_argument("--mode", choices=["er", "ir"], required=True)
    rp.add_argument("--method", choices=["scc", "vertex", "oracle"], default="scc")
    rp.add_argument("--minimal", action="store_true", help="reduce vertex-method output to an antichain")
    rp.add_argument("--check-assumptions", action="store_true",
                    help="report the fixed-point guard and Thomas-rule sanity check")
    rp.add_argument("--timing", action="store_true", help="include wall-clock time in the report")
    return p


def load_model(path, max_n):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc
    return BooleanNetwork.from_text(text, max_n=MAX_NODES if max_n is None else max_n)


def main(argv=None, stdout=None, stderr=None):
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code
    try:
        out = _dispatch(args)
        status = EXIT_OK
        if isinstance(out, tuple):
            out, status = out
    except NetworkParseError as exc:
        print(f"parse error: {exc}", file=stderr)
        return EXIT_PARSE
    except GuardViolation as exc:
        print(f"guard violation: {exc}", file=stderr)
        return EXIT_GUARD
    except (DimensionError, CycleBudgetExceeded) as exc:
        print(f"cap exceeded: {exc}", file=stderr)
        return EXIT_CAP
    except (UsageError, StateParseError) as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_ARGS
    stdout.write(out)
    return status


def _dispatch(args):
    f = load_model(args.model, args.max_n)
    cmd = args.command
    if cmd == "ig":
        return render_ig(f, args.format)
    if cmd == "stg":
        return render_stg(f, args.format)
    if cmd == "fixed-points":
        fps = sorted(f.format(x) for x in dynamics.fixed_points(f))
        return _json(fps) if args.format == "json" else "".join(s + "\n" for s in fps)
    if cmd == "attractors":
        atts = [sorted(f.format(s) for s in a) for a in dynamics.attractors(f)]
        atts.sort()
        if args.format == "json":
            return _json(atts)
        return "".join(("fixed point " if len(a) == 1 else "cyclic      ") + " ".join(a) + "\n" for a in atts)
    if cmd == "check":
        return run_check(f, args)
    if cmd == "reprogram":
        return run_reprogram(f, args)
    raise UsageError(f"unknown command {cmd}")


def _json(obj):
    return json.dumps(obj, indent=2) + "\n"


def _one_based(nodes):
    return sorted(i + 1 for i in nodes)


def _names(f, nodes):
    return "{" + ", ".join(f.names[i] for i in sorted(nodes)) + "}"


def model_summary(f):
    return {"n": f.n, "nodes": list(f.names)}


def ig_summary(G):
    return {
        "edges": len(G.edges),
        "positive": sum(1 for e in G.edges if e[2] == POS),
        "negative": sum(1 for e in G.edges if e[2] == NEG),
    }


def order_summary(order):
    return {
        "O": [_one_based(c) for c in order.O],
        "slices": [[_one_based(order.O[j]) for j in layer] for layer in order.slices],
    }


def render_ig(f, fmt="dot"):
    G = igraph.interaction_graph(f)
    edges = sorted(G.edges, key=lambda e: (e[0], e[1], -e[2]))
    if fmt == "json":
        return _json({
            "model": model_summary(f),
            "edges": [[u + 1, v + 1, "+" if s == POS else "-"] for u, v, s in edges],
        })
    if fmt == "text":
        return "".join(f"{f.names[u]} {'->' if s == POS else '-|'} {f.names[v]}\n" for u, v, s in edges)
    lines = ["digraph interaction_graph {", "  node [shape=circle];"]
    lines += [f"  {_q(name)};" for name in f.names]
    for u, v, s in edges:
        if s == POS:
            attrs = 'label="+", arrowhead=normal, color=blue'
        else:
            attrs = 'label="-", arrowhead=tee, color=red, style=dashed'
        lines.append(f"  {_q(f.names[u])} -> {_q(f.names[v])} [{attrs}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def render_stg(f, fmt="dot"):
    edges = dynamics.transitions(f)
    atts = dynamics.attractors(f)
    if fmt == "json":
        return _json({
            "model": model_summary(f),
            "states": [f.format(x) for x in range(1 << f.n)],
            "edges": [[f.format(a), f.format(b)] for a, b in edges],
            "attractors": [[f.format(s) for s in a] for a in atts],
        })
    if fmt == "text":
        return "".join(f"{f.format(a)} -> {f.format(b)}\n" for a, b in edges)
    in_attractor = set().union(*(a.states for a in atts)) if atts else set()
    lines = ["digraph transition_graph {", "  node [shape=plaintext];"]
    for k, a in enumerate(atts):
        lines.append(f"  subgraph cluster_attractor_{k} {{")
        lines.append('    color=magenta; label="";')
        lines += [f"    {_q(f.format(s))} [shape=box];" for s in a]
        lines.append("  }")
    lines += [f"  {_q(f.format(x))};" for x in range(1 << f.n) if x not in in_attractor]
    lines += [f"  {_q(f.format(a))} -> {_q(f.format(b))};" for a, b in edges]
    lines.append("}")
    return "\n".join(lines) + "\n"


def _q(s):
    return '"' + s.replace('"', '\\"') + '"'


def thomas_report(f, order=None, budget=igraph.DEFAULT_CYCLE_BUDGET):
    """Pairs of fixed points whose differing nodes hold no positive cycle (expected: none)."""
    G = order.graph if order else igraph.interaction_graph(f)
    fps = dynamics.fixed_points(f)
    bad = []
    for x, y in combinations(fps, 2):
        diff = [i for i in range(f.n) if ((x ^ y) >> i) & 1]
        if not igraph.has_positive_cycle(G, diff, budget):
            bad.append((f.format(x), f.format(y)))
    return len(fps), bad


def run_check(f, args):
    order = igraph.scc_order(f, args.cycle_budget)
    atts = dynamics.attractors(f)
    cyclic = [sorted(f.format(s) for s in a) for a in atts if not a.is_fixed_point]
    nfp, bad = thomas_report(f, order, args.cycle_budget)
    report = {
        "model": model_summary(f),
        "interaction_graph": ig_summary(order.graph),
        "scc_order": order_summary(order),
        "fixed_points": sorted(f.format(s) for a in atts if a.is_fixed_point for s in a),
        "cyclic_attractors": cyclic,
        "thomas_violations": [list(p) for p in bad],
    }
    if args.format == "json":
        out = _json(report)
    else:
        out = (
            f"model: {f.n} nodes ({', '.join(f.names)})\n"
            f"interaction graph: {report['interaction_graph']['edges']} edges "
            f"({report['interaction_graph']['positive']} positive, {report['interaction_graph']['negative']} negative)\n"
            + _order_text(f, order)
            + f"fixed points: {' '.join(report['fixed_points']) or '-'}\n"
            + "".join(f"cyclic attractor: {' '.join(c)}\n" for c in cyclic)
            + f"thomas rule: {'ok' if not bad else 'VIOLATED'} over {nfp} fixed points\n"
        )
    return out, (EXIT_GUARD if cyclic or bad else EXIT_OK)


def _order_text(f, order):
    O = " ".join(_names(f, c) for c in order.O) or "-"
    slices = "; ".join(
        f"C{i + 1} = " + " ".join(_names(f, order.O[j]) for j in layer) for i, layer in enumerate(order.slices)
    ) or "-"
    return f"O: {O}\nslices: {slices}\n"


def run_reprogram(f, args):
    if args.mode == "er" and args.method == "vertex":
        raise UsageError("the vertex method is defined for --mode ir only")
    x = f.state(args.source)
    y = f.state(args.target)
    started = time.perf_counter()
    reprog.check_assumptions(f, x, y)
    diagnostics = []
    order = igraph.scc_order(f, args.cycle_budget)
    if args.check_assumptions:
        nfp, bad = thomas_report(f, order, args.cycle_budget)
        if bad:
            raise GuardViolation(f"Thomas rule violated between {bad[0][0]} and {bad[0][1]}")
        diagnostics.append(f"assumptions: every attractor is a fixed point; "
                           f"Thomas rule holds over {nfp} fixed points")
    if args.method == "oracle":
        cap = reprog.ORACLE_MAX_N if args.max_n is None else args.max_n
        sol = reprog.oracle(f, x, y, args.mode, max_n=cap)
    elif args.method == "scc":
        algo = reprog.er_scc_filter if args.mode == "er" else reprog.ir_scc_filter
        sol = algo(f, x, y, budget=args.cycle_budget, check=False)
    else:
        sol = reprog.ir_vertex_recursive(f, x, y, budget=args.cycle_budget, minimal=args.minimal, check=False)
    elapsed = time.perf_counter() - started
    diagnostics.extend(sol.diagnostics)
    report = solution_report(f, args.mode, args.method, x, y, order, sol, diagnostics)
    if args.timing:
        report["timing_seconds"] = round(elapsed, 6)
    if args.format == "json":
        return _json(report)
    return solution_text(f, report, sol, order)


def solution_report(f, mode, method, x, y, order, sol, diagnostics):
    report = {
        "model": model_summary(f),
        "mode": mode,
        "method": method,
        "from": f.format(x),
        "to": f.format(y),
        "interaction_graph": ig_summary(order.graph),
        "scc_order": order_summary(order),
        "solutions": [_one_based(s) for s in sol.solutions],
        "scc_structure": None if sol.scc_structure is None
        else [[_one_based(c) for c in combo] for combo in sol.scc_structure],
        "diagnostics": list(diagnostics),
    }
    if sol.minimum_cardinality is not None:
        report["minimum_cardinality"] = [_one_based(s) for s in sol.minimum_cardinality]
    return report


def solution_text(f, report, sol, order):
    lines = [
        f"model: {f.n} nodes ({', '.join(f.names)})",
        f"mode: {report['mode']}  method: {report['method']}",
        f"from: {report['from']}  to: {report['to']}",
    ]
    out = "\n".join(lines) + "\n"
    out += _order_text(f, order)
    out += f"solutions ({len(sol.solutions)}):\n"
    for i, s in enumerate(sol.solutions):
        line = "  " + _names(f, s)
        if sol.scc_structure is not None:
            line += "  via SCCs " + " ".join(_names(f, c) for c in sol.scc_structure[i])
        out += line + "\n"
    if sol.minimum_cardinality is not None:
        out += "minimum cardinality: " + " ".join(_names(f, s) for s in sol.minimum_cardinality) + "\n"
    for d in report["diagnostics"]:
        out += f"note: {d}\n"
    if "timing_seconds" in report:
        out += f"time: {report['timing_seconds']:.3f}s\n"
    return out


def main_exit():
    sys.exit(main())


def report_schema():
    """The JSON schema that ``reprogram --format json`` output conforms to."""
    return json.loads(resources.files(__package__).joinpath("schemas/report.schema.json").read_text())


if __name__ == "__main__":
    main_exit()
