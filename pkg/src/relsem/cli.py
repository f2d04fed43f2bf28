"""``relsem`` command line: parse, denote, equiv, unfold and laws.

Exit codes: 0 on success (all laws pass, programs equivalent), 1 when a
counterexample was found, 2 on usage, parse or configuration errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass

from . import laws as L
from .finrel import rel
from .imp import FLAVORS, Stats, check_equiv, denote, dump, parse_program
from .imp.semantics import DEFAULT_MAX_ITER
from .rels import TraceRel, TraceSet
from .symbolic import Model, check_soundness, parse_statement, render, unfold
from .symbolic.expr import is_traced
from .symbolic.formula import DEFAULT_TRACE_CAP
from .universe import ConfigError, RelsemError, Sort, Universe, parse_universe


@dataclass(frozen=True)
class RunConfig:
    universe: Universe | None = None
    seed: int = 0
    cases: int = 1000
    max_iter: int = DEFAULT_MAX_ITER
    trace_cap: int = DEFAULT_TRACE_CAP

    def __post_init__(self):
        for name in ("cases", "max_iter", "trace_cap"):
            if getattr(self, name) <= 0:
                raise ConfigError(f"{name.replace('_', '-')} must be positive")


class UsageError(RelsemError):
    pass


def _read(path):
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _config(args):
    universe = parse_universe(_read(args.universe)) if getattr(args, "universe", None) else None
    return RunConfig(universe, args.seed, args.cases, args.max_iter, args.trace_cap)


def _need_universe(cfg):
    if cfg.universe is None:
        raise UsageError("this command needs --universe FILE")
    return cfg.universe


def cmd_parse(args, cfg, out):
    print(parse_program(_read(args.program), cfg.universe), file=out)
    return 0


def cmd_denote(args, cfg, out):
    u = _need_universe(cfg)
    prog = parse_program(_read(args.program), u)
    stats = Stats()
    text = dump(denote(prog, u, args.flavor, cfg.max_iter, stats))
    if text:
        print(text, file=out)
    for line in stats.lines():
        print(line, file=out)
    return 0


def cmd_equiv(args, cfg, out):
    u = _need_universe(cfg)
    c1 = parse_program(_read(args.first), u)
    c2 = parse_program(_read(args.second), u)
    verdict = check_equiv(c1, c2, u, args.flavor, cfg.max_iter)
    if verdict.equivalent:
        print("EQUIV", file=out)
    else:
        print("DISTINCT", file=out)
        print(verdict.counterexample, file=out)
    if not verdict.conclusive:
        print("warning: loop iteration cap reached; traces are truncated", file=sys.stderr)
    return 0 if verdict.equivalent else 1


def _json_atom(v):
    return tuple(v) if isinstance(v, list) else v


def load_model(text, decls):
    """Model from JSON: ``{"sorts": {...}, "events": [...], "sets": {...}}``.

    Sets list their elements as JSON arrays; trace positions are arrays of
    event labels.  Signatures come from the statement's declarations.
    """
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"model is not valid JSON: {exc.msg}", exc.lineno) from None
    sorts = {name: Sort(name, tuple(carrier)) for name, carrier in data.get("sorts", {}).items()}
    events = Sort("E", tuple(data["events"])) if "events" in data else None
    universe = Universe(sorts, (), events)
    sets = {}
    for name, elems in data.get("sets", {}).items():
        if name not in decls:
            raise ConfigError(f"model assigns {name}, which the statement does not declare")
        shape = decls[name]
        tuples = [tuple(_json_atom(v) for v in t) for t in elems]
        if not is_traced(shape):
            sets[name] = rel([universe.sort(c) for c in shape], tuples)
        elif events is None:
            raise ConfigError(f"{name} has a trace position but the model declares no events")
        elif len(shape) == 3:
            sets[name] = TraceRel(universe.sort(shape[0]), events, universe.sort(shape[2]),
                                  frozenset(tuples))
        else:
            sets[name] = TraceSet(universe.sort(shape[0]), events, frozenset(tuples))
    return Model(universe, sets)


def cmd_unfold(args, cfg, out):
    src = args.statement
    text = _read(src) if src == "-" or os.path.isfile(src) else src
    stmt, decls = parse_statement(text, default_sig=args.sig)
    print(render(unfold(stmt), typed_forall=args.typed), file=out)
    if args.model is None:
        return 0
    model = load_model(_read(args.model), decls)
    direct, unfolded = check_soundness(stmt, model, cfg.trace_cap)
    print(f"direct: {str(direct).lower()}", file=out)
    print(f"unfolded: {str(unfolded).lower()}", file=out)
    return 0 if direct == unfolded else 1


def cmd_laws(args, cfg, out, catalog=None):
    laws = L.catalog() if catalog is None else catalog
    if args.law:
        laws = [law for law in laws if any(pat in law.name for pat in args.law)]
        if not laws:
            raise UsageError("no law matches the --law filter")
    results = L.run_laws(cfg.seed, cfg.cases, laws)
    print(L.report(results), file=out)
    return 0 if all(r.ok for r in results) else 1


COMMANDS = {"parse": cmd_parse, "denote": cmd_denote, "equiv": cmd_equiv,
            "unfold": cmd_unfold, "laws": cmd_laws}


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--universe", metavar="FILE", help="universe declarations")
    common.add_argument("--flavor", choices=FLAVORS, default="plain")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--cases", type=int, default=1000)
    common.add_argument("--max-iter", type=int, default=DEFAULT_MAX_ITER,
                        help="Kleene iteration cap for traced loops")
    common.add_argument("--trace-cap", type=int, default=DEFAULT_TRACE_CAP,
                        help="largest trace domain enumerated by unfold --model")

    ap = argparse.ArgumentParser(prog="relsem", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)
    p = sub.add_parser("parse", parents=[common], help="parse a program and print it back")
    p.add_argument("program")
    p = sub.add_parser("denote", parents=[common], help="print a program's denotation")
    p.add_argument("program")
    p = sub.add_parser("equiv", parents=[common], help="compare two programs")
    p.add_argument("first")
    p.add_argument("second")
    p = sub.add_parser("unfold", parents=[common], help="unfold a set statement")
    p.add_argument("statement", help="statement file, '-' for stdin, or inline text")
    p.add_argument("--model", metavar="FILE", help="JSON model to evaluate both sides in")
    p.add_argument("--sig", help="signature for undeclared names, e.g. A*B")
    p.add_argument("--typed", action="store_true", help="annotate forall binders with types")
    p = sub.add_parser("laws", parents=[common], help="run the law catalog")
    p.add_argument("--law", action="append", help="only laws whose name contains this")
    return ap


def main(argv=None, out=None):
    out = sys.stdout if out is None else out
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    try:
        cfg = _config(args)
        return COMMANDS[args.command](args, cfg, out)
    except RelsemError as exc:
        print(f"relsem: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
