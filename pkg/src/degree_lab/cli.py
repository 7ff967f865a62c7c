"""Command-line entry point: ``degree-lab <command> [FILE]``.

Terms are read from FILE, from ``-e TERM``, or from stdin. Exit codes:
0 ok, 1 property failure, 2 input error, 3 budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys

from .errors import BudgetExceeded, DegreeLabError
from .generate import GenConfig
from .measure import MeasureContext, leftmost_outermost_strategy, rightmost_highest_strategy, sequence_budget
from .multiset import GREATER, pretty, to_json
from .notation import parse, print_term as show
from .properties import SUITES, run_properties
from .reduction import Kind, ReductionSeq, enumerate_redexes, enumerate_steps_of_degree, reduction_graph
from .simplify import simp, simp_trace, simpfull, simpfull_trace, w_measure
from .syntax import format_position, is_pure, maxdeg, typecheck

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3


def _read_term(args):
    if args.expr is not None:
        text = args.expr
    elif args.file and args.file != "-":
        with open(args.file) as fh:
            text = fh.read()
    else:
        text = sys.stdin.read()
    t = parse(text)
    typecheck(t)
    return t


def _emit(args, data, text):
    if args.json:
        print(json.dumps(data, indent=2))
    else:
        print(text)


def _steps_json(seq):
    return [
        {"degree": s.degree, "position": format_position(s.position), "term": show(s.target)}
        for s in seq
    ]


def _trace_text(seq):
    lines = [show(seq.source)]
    for s in seq:
        lines.append(f"  -{s.degree}-> {show(s.target)}    [{format_position(s.position) or '.'}]")
    return "\n".join(lines)


def cmd_check(args):
    t = _read_term(args)
    data = {
        "term": show(t),
        "type": str(t.ty),
        "maxdeg": maxdeg(t),
        "weight": t.weight,
        "pure": is_pure(t),
    }
    _emit(args, data, "\n".join(f"{k}: {v}" for k, v in data.items()))
    return EXIT_OK


def cmd_reduce(args):
    t = _read_term(args)
    kind = Kind.BETA if is_pure(t) else Kind.G
    steps = []
    cur = t
    while True:
        if args.strategy == "rhd":
            if kind is not Kind.BETA:
                raise DegreeLabError("the rhd strategy needs a pure lambda-term")
            if not enumerate_redexes(cur, Kind.BETA):
                break
            s = rightmost_highest_strategy(cur)
        else:
            redexes = enumerate_redexes(cur, kind)
            if not redexes:
                break
            s = leftmost_outermost_strategy(cur, kind)
        if len(steps) >= args.max_steps:
            raise BudgetExceeded(f"no normal form within {args.max_steps} steps", "reduce")
        steps.append(s)
        cur = s.target
    seq = ReductionSeq(t, steps)
    data = {"normal_form": show(cur), "length": len(steps)}
    if args.trace:
        data["steps"] = _steps_json(seq)
    _emit(args, data, _trace_text(seq) if args.trace else show(cur))
    return EXIT_OK


def cmd_steps(args):
    t = _read_term(args)
    steps = enumerate_redexes(t) if args.degree is None else enumerate_steps_of_degree(t, args.degree)
    data = _steps_json(steps)
    text = "\n".join(
        f"{format_position(s.position) or '.'}\tdegree {s.degree}\t{show(s.target)}" for s in steps
    )
    _emit(args, data, text or "(normal form)")
    return EXIT_OK


def cmd_simp(args):
    t = _read_term(args)
    if args.degree is None:
        raise DegreeLabError("simp needs --degree")
    u = simp(t, args.degree)
    data = {"term": show(u), "weight": u.weight}
    if args.trace:
        seq = simp_trace(t, args.degree)
        data["steps"] = _steps_json(seq)
        text = _trace_text(seq)
    else:
        text = show(u)
    _emit(args, data, text)
    return EXIT_OK


def cmd_simpfull(args):
    t = _read_term(args)
    u = simpfull(t)
    data = {"term": show(u), "weight": u.weight}
    if args.trace:
        seq = simpfull_trace(t)
        data["steps"] = _steps_json(seq)
        text = _trace_text(seq)
    else:
        text = show(u)
    _emit(args, data, text)
    return EXIT_OK


def cmd_w_measure(args):
    t = _read_term(args)
    w = w_measure(t)
    data = {"w": w, "simpfull": show(simpfull(t))}
    text = str(w)
    if args.trace:
        seq = simpfull_trace(t)
        data["steps"] = _steps_json(seq)
        text = _trace_text(seq) + f"\nW = {w}"
    _emit(args, data, text)
    return EXIT_OK


def _context(args):
    return MeasureContext(sequence_budget=args.budget)


def cmd_t_measure(args):
    t = _read_term(args)
    m = _context(args).t_measure(t)
    _emit(args, {"measure": to_json(m), "pretty": pretty(m)}, pretty(m))
    return EXIT_OK


def cmd_graph(args):
    t = _read_term(args)
    g = reduction_graph(t, args.degree, args.max_nodes)
    if args.dot:
        print(g.to_dot())
    elif args.json:
        print(json.dumps(g.to_json(), indent=2))
    else:
        lines = [f"{i}: {show(v)}" for i, v in enumerate(g.vertices)]
        lines += [f"{i} -{s.degree}-> {j}" for i, j, s in g.edges]
        print("\n".join(lines))
    return EXIT_OK


def cmd_verify_decrease(args):
    t = _read_term(args)
    if args.measure == "w":
        measure, cmp = w_measure, lambda a, b: a > b
        render, encode = str, lambda x: x
    else:
        ctx = _context(args)
        measure = ctx.t_measure
        cmp = lambda a, b: ctx.compare(a, b) is GREATER
        render, encode = pretty, to_json
    before = measure(t)
    rows, ok = [], True
    for s in enumerate_redexes(t, Kind.BETA):
        after = measure(s.target)
        good = cmp(before, after)
        ok &= good
        rows.append((s, after, good))
    data = {
        "measure": args.measure,
        "before": encode(before),
        "steps": [
            {"position": format_position(s.position), "degree": s.degree, "after": encode(a), "decreases": g}
            for s, a, g in rows
        ],
        "ok": ok,
    }
    text = [f"{args.measure}({show(t)}) = {render(before)}"]
    for s, a, g in rows:
        text.append(
            f"{'ok  ' if g else 'FAIL'} {format_position(s.position) or '.'} (degree {s.degree}): {render(a)}"
        )
    _emit(args, data, "\n".join(text))
    return EXIT_OK if ok else EXIT_FAIL


def cmd_props(args):
    cfg = GenConfig(
        seed=args.seed,
        max_size=args.max_size,
        max_degree=args.max_degree,
        count=args.count,
    )
    report = run_properties(cfg, args.suite, use_corpus=not args.no_corpus, ctx=_context(args))
    if args.json:
        print(json.dumps(report.to_json(), indent=2))
    else:
        print(report.summary())
        for f in report.failures:
            print(f"  FAIL [{f.suite}] {f.origin}: {f.detail}")
            print(f"       term: {f.term}")
            if f.step:
                print(f"       step: {f.step}")
            if f.before is not None:
                print(f"       before: {f.before}\n       after:  {f.after}")
    return EXIT_OK if report.ok else EXIT_FAIL


COMMANDS = {
    "check": cmd_check,
    "reduce": cmd_reduce,
    "steps": cmd_steps,
    "simp": cmd_simp,
    "simpfull": cmd_simpfull,
    "w-measure": cmd_w_measure,
    "t-measure": cmd_t_measure,
    "graph": cmd_graph,
    "verify-decrease": cmd_verify_decrease,
    "props": cmd_props,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="degree-lab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def command(name, help, term=True):
        p = sub.add_parser(name, help=help)
        if term:
            p.add_argument("file", nargs="?", help="term file (default: stdin)")
            p.add_argument("-e", "--expr", help="term given inline")
        p.add_argument("--json", action="store_true", help="machine-readable output")
        p.add_argument(
            "--budget",
            type=int,
            default=None,
            help=f"sequence budget for measures (default {sequence_budget()})",
        )
        return p

    command("check", "typecheck and describe a term")
    p = command("reduce", "reduce to normal form")
    p.add_argument("--strategy", choices=["lo", "rhd"], default="lo")
    p.add_argument("--trace", action="store_true")
    p.add_argument("--max-steps", type=int, default=10_000)
    p = command("steps", "list redexes with their degrees")
    p.add_argument("--degree", type=int)
    p = command("simp", "simplify every redex of one degree")
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--trace", action="store_true")
    p = command("simpfull", "full simplification (the G-normal form)")
    p.add_argument("--trace", action="store_true")
    p = command("w-measure", "wrappers in the full simplification")
    p.add_argument("--trace", action="store_true")
    command("t-measure", "the nested multiset measure")
    p = command("graph", "reduction graph")
    p.add_argument("--degree", type=int)
    p.add_argument("--dot", action="store_true")
    p.add_argument("--max-nodes", type=int, default=10_000)
    p = command("verify-decrease", "check that every beta-step decreases a measure")
    p.add_argument("--measure", choices=["w", "t"], default="w")
    p = command("props", "run property suites", term=False)
    p.add_argument("--suite", default="all", choices=["all", *SUITES])
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--max-size", type=int, default=10)
    p.add_argument("--max-degree", type=int, default=2)
    p.add_argument("--no-corpus", action="store_true")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except BudgetExceeded as e:
        print(f"budget exceeded: {e}", file=sys.stderr)
        return EXIT_BUDGET
    except (DegreeLabError, OSError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
