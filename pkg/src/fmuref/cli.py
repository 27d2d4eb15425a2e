"""Command-line front end over ``.fmr`` files.

Exit codes: 0 success, 1 type error or distinct verdict, 2 timeout or unknown
verdict, 64 usage error, 66 unreadable input.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import List, Optional

from . import bisim as B
from . import kernel as K
from .corpus import corpus, expected_type
from .lang import syntax as S
from .lang.parser import ParseError, parse
from .lang.printer import print_ty
from .semantics import equations
from .semantics.evaluator import DEFAULT_FUEL, EvalStuck, RunReport, eval_delay, run_program
from .typer import KindError, TypeCheckError, typecheck

EX_OK = 0
EX_FAIL = 1
EX_INCOMPLETE = 2
EX_USAGE = 64
EX_NOINPUT = 66


class UsageError(Exception):
    pass


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EX_USAGE, f"{self.prog}: error: {message}\n")


def _nat(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {text!r}")
    if n < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {n}")
    return n


def build_parser() -> argparse.ArgumentParser:
    fmt = argparse.ArgumentParser(add_help=False)
    group = fmt.add_mutually_exclusive_group()
    group.add_argument("--pretty", action="store_true", default=argparse.SUPPRESS, help="indented JSON")
    group.add_argument("--json", action="store_false", dest="pretty", default=argparse.SUPPRESS,
                       help="compact JSON (default)")

    p = _Parser(prog="fmuref", description="Step-counting semantics for System F with references.",
                parents=[fmt])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("check", parents=[fmt], help="typecheck a program")
    c.add_argument("file")

    e = sub.add_parser("eval", parents=[fmt], help="run a program from the empty heap")
    e.add_argument("file")
    e.add_argument("--fuel", type=_nat, default=DEFAULT_FUEL)

    l = sub.add_parser("laws", parents=[fmt], help="check the equational theory on random instances")
    l.add_argument("--seed", type=int, default=0)
    l.add_argument("--iters", type=_nat, default=200)

    b = sub.add_parser("bisim", parents=[fmt], help="compare two T Int programs")
    b.add_argument("left")
    b.add_argument("right")
    b.add_argument("--depth", type=_nat, default=10_000)

    x = sub.add_parser("examples", parents=[fmt], help="list or write the built-in programs")
    x.add_argument("name", nargs="?")
    x.add_argument("--out", metavar="DIR")
    return p


def _read(path: str) -> S.Tm:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror or exc}")
    return parse(text)


def _error_json(exc: Exception) -> dict:
    if isinstance(exc, (ParseError, TypeCheckError, KindError)):
        return exc.to_json()
    return {"kind": type(exc).__name__, "message": str(exc)}


def cmd_check(args):
    tm = _read(args.file)
    return EX_OK, {"type": print_ty(typecheck(tm))}


def cmd_eval(args):
    tm = _read(args.file)
    ty = typecheck(tm)
    if isinstance(ty, S.T):
        report = run_program(tm, args.fuel, typecheck=False)
    else:
        out = K.run(eval_delay(tm), args.fuel)
        if isinstance(out, K.Timeout):
            report = RunReport("timeout", None, args.fuel, None, None)
        else:
            report = RunReport("value", out.result, out.steps, None, None)
    payload = report.to_json()
    payload["type"] = print_ty(ty)
    return (EX_OK if report.status == "value" else EX_INCOMPLETE), payload


def cmd_laws(args):
    summary = equations.law_suite(args.seed, args.iters)
    return (EX_OK if summary["failed"] == 0 else EX_FAIL), summary


def cmd_bisim(args):
    left, right = _read(args.left), _read(args.right)
    verdict, trace = B.bisim_programs(left, right, args.depth)
    code = {B.Strong: EX_OK, B.Weak: EX_OK, B.Distinct: EX_FAIL, B.Unknown: EX_INCOMPLETE}[type(verdict)]
    return code, B.verdict_json(verdict, trace)


def cmd_examples(args):
    progs = corpus()
    if args.name is not None and args.name not in progs:
        raise UsageError(f"no built-in example named {args.name!r}")
    names = [args.name] if args.name else list(progs)
    if args.out:
        out = Path(args.out)
        try:
            out.mkdir(parents=True, exist_ok=True)
            written = []
            for n in names:
                path = out / f"{n}.fmr"
                path.write_text(progs[n])
                written.append(str(path))
        except OSError as exc:
            raise InputError(f"{args.out}: {exc.strerror or exc}")
        return EX_OK, {"written": written}
    if args.name:
        return EX_OK, {"name": args.name, "type": expected_type(args.name), "source": progs[args.name]}
    return EX_OK, {"examples": [{"name": n, "type": expected_type(n)} for n in names]}


COMMANDS = {
    "check": cmd_check,
    "eval": cmd_eval,
    "laws": cmd_laws,
    "bisim": cmd_bisim,
    "examples": cmd_examples,
}


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EX_USAGE
    pretty = getattr(args, "pretty", False)
    try:
        code, payload = COMMANDS[args.command](args)
    except InputError as exc:
        print(f"fmuref: {exc}", file=sys.stderr)
        return EX_NOINPUT
    except UsageError as exc:
        print(f"fmuref: {exc}", file=sys.stderr)
        return EX_USAGE
    except (ParseError, TypeCheckError, KindError, B.NotAnObservation, EvalStuck) as exc:
        code, payload = EX_FAIL, _error_json(exc)
    print(json.dumps(payload, indent=2 if pretty else None))
    return code


if __name__ == "__main__":
    sys.exit(main())
