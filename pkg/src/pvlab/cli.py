"""Command-line front end: ``pvlab <command> ...``.

Exit codes: 0 ok/true, 1 false/invalid/unsound, 2 usage or parse error,
3 capacity exceeded.
"""

from __future__ import annotations

import argparse
import sys
from importlib import resources
from pathlib import Path

from . import coloring, semantics
from .connectives import CapacityConfig
from .core import DEFAULT_SEARCH_CAP, find_isomorphism
from .envfile import parse_env, parse_morphism
from .errors import CapacityExceeded, ImplicationViolated, ParseError, PvError, UnboundAtom
from .formula import interpret, parse_formula, parse_sequent
from .norms import norm
from .search import find_morphisms
from .semantics import CLAIMED_SOUND, Mode, ParFlavor, RuleId

OK, FALSE, USAGE, CAPACITY = 0, 1, 2, 3


def load_env(path: str) -> dict:
    """Read an environment file; a missing ``std.pv`` falls back to the bundled copy."""
    p = Path(path)
    if p.exists():
        text = p.read_text(encoding="utf-8")
    elif p.name in ("std", "std.pv"):
        text = resources.files("pvlab").joinpath("data/std.pv").read_text(encoding="utf-8")
    else:
        raise FileNotFoundError(path)
    return parse_env(text)


def _env(args) -> dict:
    env = load_env(args.env)
    for spec in args.bind or ():
        alias, _, target = spec.partition("=")
        if not alias or target not in env:
            raise UnboundAtom(f"cannot bind {spec!r}")
        env[alias] = env[target]
    return env


def _caps(args) -> CapacityConfig:
    return CapacityConfig(max_elements=args.max_elements)


def _print_morphism(m) -> None:
    minus = ", ".join(f"{b}->{m.source.questions[int(i)]}" for b, i in zip(m.target.questions, m.minus))
    plus = ", ".join(f"{a}->{m.target.answers[int(j)]}" for a, j in zip(m.source.answers, m.plus))
    print(f"  minus: {minus};")
    print(f"  plus: {plus};")


# -- commands ----------------------------------------------------------------------

def cmd_eval(args) -> int:
    env, caps = _env(args), _caps(args)
    flavor = ParFlavor(args.par)
    mode = Mode(args.mode)
    obj = semantics.sequent_object(parse_sequent(args.sequent), env, caps, flavor)
    truth = semantics.models(obj, mode)
    print("TRUE" if truth else "FALSE")
    if truth and args.witness:
        if mode is Mode.MODE2:
            print(f"witness: {semantics.solutions(obj, limit=1)[0]}")
        else:
            for i, q in enumerate(obj.questions):
                j = int(obj.relation[i].argmax())
                print(f"witness: {q} => {obj.answers[j]}")
    return OK if truth else FALSE


def cmd_object(args) -> int:
    obj = interpret(parse_formula(args.formula), _env(args), _caps(args))
    nq, na = obj.shape
    print(f"questions: {nq}")
    print(f"answers: {na}")
    print(f"relation: {obj.relation_count()}")
    if args.full:
        print("question list: " + " ".join(map(str, obj.questions)))
        print("answer list: " + " ".join(map(str, obj.answers)))
        for q, a in obj.pairs():
            print(f"  {q} -> {a}")
    return OK


def cmd_morphism_check(args) -> int:
    env = _env(args)
    text = Path(args.file).read_text(encoding="utf-8")
    try:
        parse_morphism(text, env)
    except ImplicationViolated as exc:
        print(f"INVALID: implication violated at ({exc.question}, {exc.answer})")
        return FALSE
    print("VALID")
    return OK


def cmd_morphism_find(args) -> int:
    env, caps = _env(args), _caps(args)
    a = interpret(parse_formula(args.source), env, caps)
    b = interpret(parse_formula(args.target), env, caps)
    limit = None if args.all else args.limit
    found = find_morphisms(a, b, limit=limit, max_search=args.max_search)
    print(f"found: {len(found)}")
    for k, m in enumerate(found):
        print(f"morphism {k}:")
        _print_morphism(m)
    return OK if found else FALSE


def cmd_iso(args) -> int:
    env, caps = _env(args), _caps(args)
    a = interpret(parse_formula(args.left), env, caps)
    b = interpret(parse_formula(args.right), env, caps)
    hit = find_isomorphism(a, b, max_search=args.max_search)
    if hit is None:
        print("NOT ISOMORPHIC")
        return FALSE
    print("ISOMORPHIC")
    _print_morphism(hit[0])
    return OK


def cmd_norm(args) -> int:
    obj = interpret(parse_formula(args.formula), _env(args), _caps(args))
    print(norm(obj))
    return OK


def cmd_soundness(args) -> int:
    rules = [RuleId(r.strip()) for r in args.rules.split(",")] if args.rules else list(RuleId)
    tallies = semantics.run_soundness(rules, trials=args.trials, seed=args.seed, max_size=args.max_size,
                                      mode=Mode(args.mode), flavor=ParFlavor(args.par), caps=_caps(args))
    bad = False
    for rule, t in tallies.items():
        print(f"{rule.value}: sound={t.sound} unsound={t.unsound} vacuous={t.vacuous} skipped={t.skipped}")
        bad |= t.unsound > 0 and rule in CLAIMED_SOUND
    return FALSE if bad else OK


def cmd_fixtures(args) -> int:
    ok = True
    for name in semantics.FIXTURE_NAMES:
        fx, rep = semantics.run_fixture(name, _caps(args))
        match = rep.verdict is fx.expected
        ok &= match
        print(f"{name}: expected {fx.expected.value}, got {rep.verdict.value} [{'ok' if match else 'MISMATCH'}]")
    return OK if ok else FALSE


def cmd_demo(args) -> int:
    n, caps = args.n, _caps(args)
    f = coloring.coloring_to_sat(n, caps=caps)
    print(f"coloring object: {len(f.target.questions)} graphs, {len(f.target.answers)} colourings")
    print(f"sat object: {len(f.source.questions)} formulas, {len(f.source.answers)} assignments")
    print("encoding morphism: VALID")
    ok = True
    for edges in (coloring.all_edges(3), coloring.all_edges(n)):
        sat = coloring.satisfiable(n, coloring.encode_coloring(n, edges))
        col = coloring.colourable(n, edges)
        ok &= sat == col
        print(f"graph {coloring.graph_atom(edges)}: satisfiable={sat} colourable={col}")
    return OK if ok else FALSE


# -- argument parsing -------------------------------------------------------------------

def _global_flags(parser: argparse.ArgumentParser, suppress: bool) -> None:
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    parser.add_argument("--max-elements", type=int, default=d(CapacityConfig().max_elements),
                        help="largest carrier any construction may build")
    parser.add_argument("--max-search", type=int, default=d(DEFAULT_SEARCH_CAP),
                        help="largest morphism or isomorphism search allowed")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pvlab", description=__doc__.splitlines()[0])
    _global_flags(parser, suppress=False)
    shared = argparse.ArgumentParser(add_help=False)
    _global_flags(shared, suppress=True)
    envp = argparse.ArgumentParser(add_help=False)
    envp.add_argument("--env", required=True, help="environment file (std.pv falls back to the bundled one)")
    envp.add_argument("--bind", action="append", metavar="NAME=OBJ", help="alias an object under another name")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", parents=[shared, envp], help="decide truth of a sequent")
    p.add_argument("--sequent", required=True)
    p.add_argument("--mode", type=int, choices=(1, 2), default=2)
    p.add_argument("--par", choices=("final", "provisional"), default="final")
    p.add_argument("--witness", action="store_true")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("object", parents=[shared, envp], help="build the object of a formula")
    p.add_argument("--formula", required=True)
    p.add_argument("--full", action="store_true")
    p.set_defaults(func=cmd_object)

    p = sub.add_parser("morphism", help="check or search morphisms")
    msub = p.add_subparsers(dest="action", required=True)
    q = msub.add_parser("check", parents=[shared, envp])
    q.add_argument("--file", required=True)
    q.set_defaults(func=cmd_morphism_check)
    q = msub.add_parser("find", parents=[shared, envp])
    q.add_argument("--from", dest="source", required=True)
    q.add_argument("--to", dest="target", required=True)
    g = q.add_mutually_exclusive_group()
    g.add_argument("--all", action="store_true")
    g.add_argument("--limit", type=int, default=1)
    q.set_defaults(func=cmd_morphism_find)

    p = sub.add_parser("iso", parents=[shared, envp], help="search for an isomorphism")
    p.add_argument("left")
    p.add_argument("right")
    p.set_defaults(func=cmd_iso)

    p = sub.add_parser("norm", parents=[shared, envp], help="least covering answer set size")
    p.add_argument("formula")
    p.set_defaults(func=cmd_norm)

    p = sub.add_parser("soundness", parents=[shared], help="randomized rule soundness run")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--max-size", type=int, default=2)
    p.add_argument("--rules", help="comma-separated rule names (default: all)")
    p.add_argument("--mode", type=int, choices=(1, 2), default=2)
    p.add_argument("--par", choices=("final", "provisional"), default="final")
    p.set_defaults(func=cmd_soundness)

    p = sub.add_parser("fixtures", parents=[shared], help="reproduce the counterexample fixtures")
    p.set_defaults(func=cmd_fixtures)

    p = sub.add_parser("demo", help="worked examples")
    dsub = p.add_subparsers(dest="demo", required=True)
    q = dsub.add_parser("coloring-sat", parents=[shared])
    q.add_argument("--n", type=int, choices=(3, 4), default=3)
    q.set_defaults(func=cmd_demo)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except CapacityExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return CAPACITY
    except (ParseError, UnboundAtom, FileNotFoundError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE
    except PvError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return FALSE


if __name__ == "__main__":
    sys.exit(main())
