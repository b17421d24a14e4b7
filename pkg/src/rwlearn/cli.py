"""Batch CLI: parse a problem, learn a definition, print the report.

Report blocks go to stdout, the induction trace to stderr, optional
machine-readable output to a JSON file.  Exit status: 0 success, 1 synthesis
failure, 2 input error.
"""

from __future__ import annotations

import argparse
import json
import sys

from .antiunify import INF
from .dsl import ParseError, Problem, parse_problem
from .learner import InduceConfig, InduceReport, induce
from .rewrite import RewriteSystem, covers_all
from .simplify import inline_single_rule_aux, prune_irrelevant_args
from .terms import App, Term, Var, render_term


def emit_trace(events) -> str:
    """One line per event, nested with '. ' per induction depth."""
    return "".join(f"{'. ' * e.level}{e.text}\n" for e in events)


def term_to_json(t: Term):
    if isinstance(t, Var):
        return {"var": t.name}
    return {"app": t.head, "args": [term_to_json(a) for a in t.args]}


def term_from_json(doc) -> Term:
    if "var" in doc:
        return Var(doc["var"])
    return App(doc["app"], tuple(term_from_json(a) for a in doc["args"]))


def export_json(report: InduceReport, problem: Problem | None = None,
                system: RewriteSystem | None = None) -> dict:
    """Stable machine-readable form of a run; rules round-trip via term_from_json."""
    system = system if system is not None else report.system
    doc = {
        "target": report.target,
        "success": report.success,
        "sorts": {},
        "signatures": [],
        "aux_signatures": [
            {"name": s.name, "domain": list(s.domain), "range": s.range}
            for s in (system.signatures if system else report.aux_signatures)
            if problem is None or s.name != report.target
        ],
        "rules": [],
        "coverage": {"covered": report.success, "uncovered": []},
        "trace": [{"level": e.level, "kind": e.kind, "text": e.text} for e in report.trace],
        "failure": None,
    }
    if problem is not None:
        doc["sorts"] = {
            name: [{"name": alt.name, "args": list(alt.arg_sorts)} for alt in alts]
            for name, alts in problem.sort_env.sorts.items()
        }
        doc["signatures"] = [
            {"name": s.name, "domain": list(s.domain), "range": s.range}
            for s in problem.signatures
        ]
    if system is not None:
        doc["rules"] = [
            {"lhs": term_to_json(r.lhs), "rhs": term_to_json(r.rhs)} for r in system.rules
        ]
    if report.failure is not None:
        doc["failure"] = {
            "reason": report.failure.reason,
            "underivable": [
                {
                    "aux": u.aux_name,
                    "layer": u.layer,
                    "example": f"{u.member.render()}",
                    "unresolved_call": render_term(u.call),
                }
                for u in report.failure.underivable
            ],
            "uncovered": [ex.render() for ex in report.failure.uncovered],
        }
        doc["coverage"]["uncovered"] = [ex.render() for ex in report.failure.uncovered]
    return doc


def _print_signature(sig) -> str:
    return f"{sig.name} signature [{','.join(sig.domain)}]-->{sig.range}"


def run_problem(problem: Problem, *, inline: bool = False, trace: bool = True,
                json_path: str | None = None, out=None, err=None) -> int:
    """Learn the target, simplify, re-verify coverage, and print the report."""
    out = out if out is not None else sys.stdout
    err = err if err is not None else sys.stderr

    print("+++++ Examples input check:", file=out)
    for i in range(len(problem.examples)):
        print(f"+++++ Example {i + 1}:", file=out)
    if problem.var_sorts:
        print("Variable sorts:", file=out)
        items = ",".join(f"{v}:{s}" for v, s in reversed(list(problem.var_sorts.items())))
        print(f"[{items}]", file=out)
    print("+++++ Examples input check done", file=out)

    report = induce(problem.target, problem.examples, problem.sort_env,
                    problem.signatures, problem.config)
    for warning in report.warnings:
        print(f"warning: {warning}", file=err)
    if trace:
        err.write(emit_trace(report.trace))

    if not report.success:
        print("SYNTHESIS FAILED:", report.failure.reason, file=out)
        for u in report.failure.underivable:
            print(f"underivable example for {u.aux_name} (auxiliary layer {u.layer}): "
                  f"{u.member.render()} needs {render_term(u.call)}", file=out)
        for ex in report.failure.uncovered:
            print(f"uncovered example: {ex.render()}", file=out)
        if json_path:
            _write_json(json_path, export_json(report, problem))
        return 1

    system = prune_irrelevant_args(report.system, keep={problem.target})
    if inline:
        system = inline_single_rule_aux(system, keep={problem.target})
    print("+++++ Examples output check:", file=out)
    covered, uncovered = covers_all(system, problem.examples, problem.config.step_limit)
    if not covered:
        # simplification must preserve coverage; treat a violation as a failure
        print("+++++ Examples output check FAILED", file=out)
        for ex in uncovered:
            print(f"uncovered example: {ex.render()}", file=out)
        return 1
    print("+++++ Examples output check done", file=out)

    print("FUNCTION SIGNATURES:", file=out)
    aux = [s for s in system.signatures if s.name != problem.target]
    for sig in reversed(aux):
        print(_print_signature(sig), file=out)
    print(_print_signature(problem.target_signature), file=out)
    print("", file=out)
    print("FUNCTION EXAMPLES:", file=out)
    for ex in problem.examples:
        print(ex.render(), file=out)
    print("", file=out)
    print("FUNCTION DEFINITIONS:", file=out)
    for rule in system.rules:
        print(rule.render(), file=out)
    if json_path:
        _write_json(json_path, export_json(report, problem, system))
    return 0


def _write_json(path: str, doc: dict):
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, indent=2)
        fh.write("\n")


def _parse_depth(text: str):
    if text in ("inf", "infinity"):
        return INF
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("depth must be >= 1 or 'inf'")
    return value


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="rwlearn",
        description="Learn a terminating rewrite definition from i/o equations.")
    parser.add_argument("file", nargs="?", default="-",
                        help="problem file, or - for standard input (default)")
    parser.add_argument("--depth", type=_parse_depth, default=INF, metavar="N|inf",
                        help="anti-unification depth bound (default inf)")
    parser.add_argument("--inline", action="store_true",
                        help="inline single-rule auxiliary functions")
    parser.add_argument("--trace", action=argparse.BooleanOptionalAction, default=True,
                        help="print the induction trace to stderr (default on)")
    parser.add_argument("--json", metavar="PATH", help="write a JSON report to PATH")
    parser.add_argument("--step-limit", type=int, default=10000, metavar="N")
    parser.add_argument("--max-aux", type=int, default=50, metavar="N",
                        help="cap on auxiliary functions per run")
    parser.add_argument("--max-depth", type=int, default=10, metavar="N",
                        help="cap on auxiliary recursion layers")
    parser.add_argument("--whole-set-lgg", action="store_true",
                        help="try anti-unifying the whole example set before splitting")
    args = parser.parse_args(argv)

    try:
        text = sys.stdin.read() if args.file == "-" else open(args.file, encoding="utf-8").read()
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    try:
        problem = parse_problem(text)
    except ParseError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    problem.config = InduceConfig(
        depth=args.depth,
        max_aux_functions=args.max_aux,
        max_recursion_depth=args.max_depth,
        step_limit=args.step_limit,
        try_whole_set_lgg_first=args.whole_set_lgg,
    )
    return run_problem(problem, inline=args.inline, trace=args.trace, json_path=args.json)


if __name__ == "__main__":
    sys.exit(main())
