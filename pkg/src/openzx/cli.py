"""Command line frontend.

Exit codes: 0 success, 1 property failure (unsound rule, failed law),
2 usage or input error, 3 search budget exhausted.  Errors are emitted as
JSON objects on stderr so scripts can consume them.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import interface as core
from .cospan import ArityMismatch, OpenGraph
from .laws import run_laws
from .prover import Budget
from .rules import ArityMismatch as TermArityMismatch
from .rules import TermSyntaxError, parse_term, translate
from .semantics import NonWireOpenNode

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3


class CliError(Exception):
    def __init__(self, message: str, code: int = EXIT_USAGE, **extra):
        super().__init__(message)
        self.code = code
        self.payload = {"error": message, **extra}


def _emit(obj) -> None:
    print(json.dumps(obj, indent=2, sort_keys=True))


def _load_diagram(path: str) -> OpenGraph:
    try:
        with open(path) as fh:
            return OpenGraph.from_json(json.load(fh))
    except FileNotFoundError:
        raise CliError(f"no such file: {path}")
    except (json.JSONDecodeError, KeyError, ValueError, TypeError) as exc:
        raise CliError(f"malformed diagram in {path}: {exc}")


def _budget(args) -> Budget:
    return Budget(max_steps=args.max_steps, max_states=args.max_states,
                  max_nodes=args.max_nodes)


def _add_budget_args(p) -> None:
    p.add_argument("--max-steps", type=int, default=16)
    p.add_argument("--max-states", type=int, default=10_000)
    p.add_argument("--max-nodes", type=int, default=64)


def cmd_parse(args) -> int:
    try:
        term = parse_term(args.term)
        diagram = translate(term)
    except TermSyntaxError as exc:
        raise CliError(str(exc), position=exc.pos, line=exc.line,
                       column=exc.column)
    except TermArityMismatch as exc:
        raise CliError(str(exc))
    _emit(diagram.to_json())
    return EXIT_OK


def cmd_compose(args) -> int:
    f = _load_diagram(args.left)
    g = _load_diagram(args.right)
    try:
        _emit(core.compose(f, g).to_json())
    except ArityMismatch as exc:
        raise CliError(str(exc))
    return EXIT_OK


def cmd_tensor(args) -> int:
    f = _load_diagram(args.left)
    g = _load_diagram(args.right)
    _emit(core.tensor(f, g).to_json())
    return EXIT_OK


def cmd_eval(args) -> int:
    f = _load_diagram(args.diagram)
    try:
        _emit(core.eval_diagram(f))
    except NonWireOpenNode as exc:
        raise CliError(str(exc))
    return EXIT_OK


def cmd_matches(args) -> int:
    host = _load_diagram(args.diagram)
    rules = core.basic_rules()
    try:
        found = core.enumerate_matches(rules, args.rule, host, args.direction)
    except core.UnknownRule as exc:
        raise CliError(f"unknown rule: {exc}")
    _emit([m.to_json() for m in found])
    return EXIT_OK


def cmd_rewrite(args) -> int:
    host = _load_diagram(args.diagram)
    rules = core.basic_rules()
    try:
        result, witness = core.rewrite(rules, args.rule, host, args.match,
                                       args.direction)
    except core.UnknownRule as exc:
        raise CliError(f"unknown rule: {exc}")
    except core.StaleMatch as exc:
        raise CliError(str(exc))
    _emit({"result": result.to_json(), "witness": witness.to_json()})
    return EXIT_OK


def cmd_prove(args) -> int:
    f = _load_diagram(args.left)
    g = _load_diagram(args.right)
    try:
        derivation = core.prove_diagrams(f, g, _budget(args))
    except ArityMismatch as exc:
        raise CliError(str(exc))
    _emit(derivation.to_json())
    return EXIT_OK if derivation.found else EXIT_BUDGET


def cmd_normalize(args) -> int:
    f = _load_diagram(args.diagram)
    _emit(core.normalize(f, _budget(args)).to_json())
    return EXIT_OK


def cmd_soundness(args) -> int:
    rules = core.basic_rules()
    name = None if args.all else args.rule
    if name is None and not args.all:
        raise CliError("pass --rule NAME or --all")
    try:
        reports = core.run_soundness(rules, name)
    except core.UnknownRule as exc:
        raise CliError(f"unknown rule: {exc}")
    _emit([r.to_json() for r in reports])
    return EXIT_OK if all(r.sound for r in reports) else EXIT_FAIL


def cmd_check_laws(args) -> int:
    reports = run_laws(args.law, seed=args.seed, cases=args.cases)
    _emit([r.to_json() for r in reports])
    return EXIT_OK if all(r.ok for r in reports) else EXIT_FAIL


def cmd_rules(args) -> int:
    _emit(core.rules_json(core.basic_rules()))
    return EXIT_OK


def cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app
    app = create_app(snapshot_dir=args.snapshot)
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="openzx",
        description="Open-graph rewriting engine for zx diagrams")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("parse", help="translate a term to diagram JSON")
    p.add_argument("term")
    p.set_defaults(fn=cmd_parse)

    for name, fn in (("compose", cmd_compose), ("tensor", cmd_tensor)):
        p = sub.add_parser(name)
        p.add_argument("left")
        p.add_argument("right")
        p.set_defaults(fn=fn)

    p = sub.add_parser("eval", help="evaluate a diagram to a complex matrix")
    p.add_argument("diagram")
    p.set_defaults(fn=cmd_eval)

    p = sub.add_parser("matches", help="list rule matches in a diagram")
    p.add_argument("diagram")
    p.add_argument("--rule", required=True)
    p.add_argument("--direction", choices=("forward", "reversed"),
                   default="forward")
    p.set_defaults(fn=cmd_matches)

    p = sub.add_parser("rewrite", help="apply a rule at a match index")
    p.add_argument("diagram")
    p.add_argument("--rule", required=True)
    p.add_argument("--match", type=int, required=True)
    p.add_argument("--direction", choices=("forward", "reversed"),
                   default="forward")
    p.set_defaults(fn=cmd_rewrite)

    p = sub.add_parser("prove", help="search for a derivation between two "
                                     "diagrams")
    p.add_argument("left")
    p.add_argument("right")
    _add_budget_args(p)
    p.set_defaults(fn=cmd_prove)

    p = sub.add_parser("normalize")
    p.add_argument("diagram")
    _add_budget_args(p)
    p.set_defaults(fn=cmd_normalize)

    p = sub.add_parser("soundness", help="check rules against the matrix "
                                         "semantics")
    p.add_argument("--rule")
    p.add_argument("--all", action="store_true")
    p.set_defaults(fn=cmd_soundness)

    p = sub.add_parser("check-laws")
    p.add_argument("--law", default="all")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--cases", type=int, default=100)
    p.set_defaults(fn=cmd_check_laws)

    p = sub.add_parser("rules", help="export the rule set as JSON")
    p.set_defaults(fn=cmd_rules)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8321)
    p.add_argument("--snapshot", default=None)
    p.set_defaults(fn=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        return args.fn(args)
    except CliError as exc:
        print(json.dumps(exc.payload), file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
