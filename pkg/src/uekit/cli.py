"""uekit command line.

Exit codes: 0 ok, 1 parse/load error, 2 semantic error, 3 property failure.
Data goes to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import equivalence, ue
from .dot import to_dot
from .errors import FormulaSyntaxError, ModelError, UekitError
from .models import load_model, validate
from .setops import extension, satisfies
from .suite import run_suite
from .syntax import parse_formula, print_formula

EXIT_OK, EXIT_PARSE, EXIT_SEMANTIC, EXIT_PROPERTY = 0, 1, 2, 3


class _Exit(Exception):
    def __init__(self, code, message):
        super().__init__(message)
        self.code = code


def _read_model(path):
    try:
        return load_model(Path(path).read_bytes())
    except OSError as exc:
        raise _Exit(EXIT_PARSE, f"cannot read {path}: {exc.strerror}") from None
    except ModelError as exc:
        raise _Exit(EXIT_PARSE, f"{path}: {exc}") from None


def _parse(text):
    try:
        return parse_formula(text)
    except FormulaSyntaxError as exc:
        raise _Exit(EXIT_PARSE, str(exc)) from None


def _emit(obj):
    sys.stdout.write(json.dumps(obj, indent=2, sort_keys=False) + "\n")


def cmd_eval(args):
    m = _read_model(args.model)
    f = _parse(args.formula)
    if args.at is not None:
        value = satisfies(m, args.at, f)
        if args.json:
            _emit({"state": args.at, "formula": print_formula(f), "value": value})
        else:
            print("true" if value else "false")
        return
    names = m.names_of(extension(m, f))
    if args.json:
        _emit({"formula": print_formula(f), "extension": names})
    else:
        print(" ".join(names))


def cmd_ue(args):
    m = _read_model(args.model)
    ext = ue.build_ue(m, args.kind, method=args.method)
    sys.stdout.write(ext.dumps())


def _equiv_models(args):
    m1, m2 = _read_model(args.file1), _read_model(args.file2)
    w1, w2 = args.state1, args.state2
    if getattr(args, "via_ue", None):
        m1 = ue.build_ue(m1, args.via_ue).model
        m2 = ue.build_ue(m2, args.via_ue).model
        w1, w2 = "pi_" + w1, "pi_" + w2
    return m1, w1, m2, w2


def cmd_equiv(args):
    m1, w1, m2, w2 = _equiv_models(args)
    f = equivalence.distinguishing_formula(m1, w1, m2, w2, args.lang)
    if args.json:
        _emit({"equivalent": f is None, "witness": None if f is None else print_formula(f)})
    elif f is None:
        print("equivalent")
    else:
        print(f"distinguished by {print_formula(f)}")


def cmd_bisim(args):
    m1, m2 = _read_model(args.file1), _read_model(args.file2)
    value = equivalence.kripke_bisimilar(m1, args.state1, m2, args.state2)
    if args.json:
        _emit({"bisimilar": value})
    else:
        print("bisimilar" if value else "not bisimilar")


def cmd_closure(args):
    m = _read_model(args.model)
    c = equivalence.definable_closure(m, args.lang)
    if args.json:
        _emit(c.to_json())
        return
    print(f"{len(c)} definable sets, {len(c.blocks)} blocks")
    for b, w in zip(c.blocks, c.block_witness):
        print(f"{' '.join(m.names_of(b))}\t{print_formula(w)}")


def cmd_suite(args):
    res = run_suite(args.seed, args.count, args.max_states)
    _emit(res.to_json())
    if res.failure is not None:
        raise _Exit(EXIT_PROPERTY, f"law {res.failure.law} failed on case {res.failure.case}")


def cmd_dot(args):
    m = _read_model(args.model)
    sys.stdout.write(to_dot(m, Path(args.model).stem))


def cmd_validate(args):
    try:
        data = json.loads(Path(args.model).read_bytes())
    except (OSError, ValueError) as exc:
        raise _Exit(EXIT_PARSE, f"cannot load {args.model}: {exc}") from None
    problems = validate(data)
    if args.json:
        _emit({"violations": problems})
    else:
        for p in problems:
            print(p)
    if problems:
        raise _Exit(EXIT_PARSE, f"{len(problems)} violation(s)")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="uekit", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, help):
        sp = sub.add_parser(name, help=help)
        sp.add_argument("--json", action="store_true", help="machine-readable output")
        sp.set_defaults(func=func)
        return sp

    sp = add("eval", cmd_eval, "print a formula's extension or a point query")
    sp.add_argument("model")
    sp.add_argument("formula")
    sp.add_argument("--at", metavar="STATE")

    sp = add("ue", cmd_ue, "build an ultrafilter extension")
    sp.add_argument("model")
    sp.add_argument("kind", choices=ue.UE_KINDS)
    sp.add_argument("--method", choices=("shortcut", "literal"), default="shortcut")

    for name, func, help in (
        ("equiv", cmd_equiv, "decide logical equivalence of two pointed models"),
        ("bisim", cmd_bisim, "decide bisimilarity of two pointed Kripke models"),
    ):
        sp = add(name, func, help)
        sp.add_argument("file1")
        sp.add_argument("state1")
        sp.add_argument("file2")
        sp.add_argument("state2")
        if name == "equiv":
            sp.add_argument("--lang", choices=("box", "nabla"), default="box")
            sp.add_argument("--via-ue", choices=ue.UE_KINDS)

    sp = add("closure", cmd_closure, "definable-set closure with witness formulas")
    sp.add_argument("model")
    sp.add_argument("--lang", choices=("box", "nabla"), default="box")

    sp = add("suite", cmd_suite, "run the seeded law battery")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--count", type=int, default=100)
    sp.add_argument("--max-states", type=int, default=5)

    sp = add("dot", cmd_dot, "render a model as a Graphviz digraph")
    sp.add_argument("model")

    sp = add("validate", cmd_validate, "list invariant violations in a model file")
    sp.add_argument("model")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        args.func(args)
    except _Exit as exc:
        print(f"uekit: {exc}", file=sys.stderr)
        return exc.code
    except UekitError as exc:
        print(f"uekit: {exc}", file=sys.stderr)
        return EXIT_SEMANTIC
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
