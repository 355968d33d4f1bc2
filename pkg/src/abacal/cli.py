"""``abacal`` command line.

Exit codes: 0 success, 1 error (parse, type, failed laws, compiler
disagreement), 2 out of fuel (``run``, ``eval-rec``) or bad usage (argparse).
"""

from __future__ import annotations

import argparse
import itertools
import os
import sys
from pathlib import Path

from .dot import emit_dot
from .lawcheck import FAMILIES, LawConfig, check_laws
from .machine import Halted, InvalidState, MachineState, StateSyntaxError, evaluate, parse_state
from .recfun import ArityError, RecFun, Value, arity, compile_recfun, oracle_eval
from .syntax import (
    ParseError,
    parse_poly,
    parse_recfun,
    parse_term,
    print_poly,
    print_recfun,
    print_term,
)
from .term import Term, TermTypeError, infer_type

__all__ = [
    "ParseError",
    "main",
    "parse_poly",
    "parse_recfun",
    "parse_term",
    "print_poly",
    "print_recfun",
    "print_term",
    "run_cli",
]

EXIT_OK, EXIT_ERROR, EXIT_FUEL = 0, 1, 2


class _Fail(Exception):
    """Reported as a one-line message on stderr with exit code 1."""


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise _Fail(f"{path}: {exc.strerror}") from None


def _write(path: str, text: str) -> None:
    try:
        Path(path).write_text(text if text.endswith("\n") else text + "\n", encoding="utf-8")
    except OSError as exc:
        raise _Fail(f"{path}: {exc.strerror}") from None


def _load_term(path: str) -> Term:
    try:
        t = parse_term(_read(path))
    except ParseError as exc:
        raise _Fail(f"{path}:{exc.line}:{exc.col}: {exc.message}") from None
    try:
        infer_type(t)
    except TermTypeError as exc:
        raise _Fail(f"{path}: type error {exc}\n  in {print_term(exc.subterm)}") from None
    return t


def _load_rec(path: str) -> RecFun:
    try:
        return parse_recfun(_read(path))
    except ParseError as exc:
        raise _Fail(f"{path}:{exc.line}:{exc.col}: {exc.message}") from None


def _nat_list(text: str) -> tuple[int, ...]:
    text = text.strip()
    if not text:
        return ()
    try:
        out = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise _Fail(f"bad argument list {text!r}; expected 'k1,...,kn'") from None
    if any(k < 0 for k in out):
        raise _Fail("arguments must be natural numbers")
    return out


def _positive(text: str) -> int:
    n = int(text)
    if n <= 0:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {n}")
    return n


def _natural(text: str) -> int:
    n = int(text)
    if n < 0:
        raise argparse.ArgumentTypeError(f"expected a natural number, got {n}")
    return n


def _default_seed() -> int:
    raw = os.environ.get("ABACAL_SEED", "0")
    try:
        return int(raw)
    except ValueError:
        raise _Fail(f"ABACAL_SEED must be an integer, got {raw!r}") from None


# -- subcommands -------------------------------------------------------------


def cmd_check(args) -> int:
    t = _load_term(args.term)
    print(infer_type(t))
    return EXIT_OK


def cmd_run(args) -> int:
    t = _load_term(args.term)
    try:
        s = parse_state(args.state)
    except StateSyntaxError as exc:
        raise _Fail(str(exc)) from None
    log: list | None = [] if args.trace else None
    try:
        out = evaluate(t, s, args.fuel, log)
    except InvalidState as exc:
        raise _Fail(str(exc)) from None
    for label, before, after in log or ():
        print(f"{label:<12} {before}  ->  {after}", file=sys.stderr)
    if isinstance(out, Halted):
        print(out.state)
        return EXIT_OK
    print("out-of-fuel")
    return EXIT_FUEL


def cmd_compile(args) -> int:
    e = _load_rec(args.recfun)
    _write(args.output, print_term(compile_recfun(e)))
    return EXIT_OK


def _check_args(e: RecFun, ks: tuple[int, ...]) -> None:
    n = arity(e)
    if len(ks) != n:
        raise _Fail(f"function has arity {n} but {len(ks)} arguments were given")


def cmd_eval_rec(args) -> int:
    e = _load_rec(args.recfun)
    ks = _nat_list(args.args)
    _check_args(e, ks)
    out = oracle_eval(e, ks, args.fuel)
    if isinstance(out, Value):
        print(out.value)
        return EXIT_OK
    print("out-of-fuel")
    return EXIT_FUEL


def _show(outcome) -> str:
    match outcome:
        case Value(v):
            return str(v)
        case Halted(MachineState(_, (v,))):
            return str(v)
    return "out-of-fuel"


def cmd_diff(args) -> int:
    e = _load_rec(args.recfun)
    n = arity(e)
    term = compile_recfun(e)
    rows = []
    total = 0
    for ks in itertools.product(range(args.max + 1), repeat=n):
        total += 1
        want = _show(oracle_eval(e, ks, args.fuel))
        got = _show(evaluate(term, MachineState(0, ks), args.fuel))
        if want != got:
            rows.append((",".join(map(str, ks)) or "()", want, got))
    if rows:
        w = max(4, *(len(r[0]) for r in rows))
        print(f"{'args':<{w}}  {'oracle':>12}  {'compiled':>12}")
        for ks, want, got in rows:
            print(f"{ks:<{w}}  {want:>12}  {got:>12}")
    print(f"{total} argument tuples, {len(rows)} disagreements")
    return EXIT_ERROR if rows else EXIT_OK


def cmd_laws(args) -> int:
    seed = args.seed if args.seed is not None else _default_seed()
    families = tuple(args.family) if args.family else None
    if families:
        unknown = [f for f in families if not any(n == f or n.startswith(f + ".") for n in FAMILIES)]
        if unknown:
            raise _Fail(f"unknown law family: {', '.join(unknown)}")
    cfg = LawConfig(
        seed=seed,
        samples=args.samples,
        fuel=args.fuel,
        max_counter=args.max_counter,
        instances=args.instances,
        families=families,
        jobs=args.jobs,
    )
    report = check_laws(cfg)
    sys.stdout.write(report.to_text())
    if args.json:
        _write(args.json, report.to_json())
    return EXIT_ERROR if report.failures else EXIT_OK


def cmd_dot(args) -> int:
    t = _load_term(args.term)
    _write(args.output, emit_dot(t, Path(args.term).stem))
    return EXIT_OK


# -- parser ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="abacal", description="Abacus programs: check, run, compile and test.")
    sub = p.add_subparsers(dest="command", required=True, metavar="COMMAND")

    c = sub.add_parser("check", help="type-check a term file")
    c.add_argument("term")
    c.set_defaults(func=cmd_check)

    c = sub.add_parser("run", help="evaluate a term on a state")
    c.add_argument("term")
    c.add_argument("--state", required=True, help="state literal, e.g. '#0: 3,2'")
    c.add_argument("--fuel", type=_positive, default=10_000)
    c.add_argument("--trace", action="store_true", help="log succ/zero/pred steps to stderr")
    c.set_defaults(func=cmd_run)

    c = sub.add_parser("compile", help="compile a recursive function to a term file")
    c.add_argument("recfun")
    c.add_argument("-o", "--output", required=True)
    c.set_defaults(func=cmd_compile)

    c = sub.add_parser("eval-rec", help="evaluate a recursive function directly")
    c.add_argument("recfun")
    c.add_argument("--args", required=True, help="comma-separated naturals, '' for none")
    c.add_argument("--fuel", type=_positive, default=10_000)
    c.set_defaults(func=cmd_eval_rec)

    c = sub.add_parser("diff", help="compare compiled and direct evaluation")
    c.add_argument("recfun")
    c.add_argument("--max", type=_natural, required=True, help="largest argument value")
    c.add_argument("--fuel", type=_positive, default=1_000_000)
    c.set_defaults(func=cmd_diff)

    d = LawConfig()
    c = sub.add_parser("laws", help="check instances of the equational theory")
    c.add_argument("--samples", type=_positive, default=d.samples)
    c.add_argument("--fuel", type=_positive, default=d.fuel)
    c.add_argument("--seed", type=int, default=None, help="default: $ABACAL_SEED or 0")
    c.add_argument("--family", action="append", help="family name or prefix such as A3; repeatable")
    c.add_argument("--instances", type=_positive, default=d.instances)
    c.add_argument("--max-counter", type=_natural, default=d.max_counter)
    c.add_argument("--jobs", type=_positive, default=1)
    c.add_argument("--json", metavar="FILE", help="also write a JSON summary")
    c.set_defaults(func=cmd_laws)

    c = sub.add_parser("dot", help="emit a Graphviz flowchart")
    c.add_argument("term")
    c.add_argument("-o", "--output", required=True)
    c.set_defaults(func=cmd_dot)
    return p


def run_cli(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (_Fail, ArityError) as exc:
        print(f"abacal {args.command}: {exc}", file=sys.stderr)
        return EXIT_ERROR


def main(argv: list[str] | None = None) -> int:
    try:
        return run_cli(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_ERROR
