"""Command line front end.

Commands: fmt, ord, cmp, nf, prove, check, step, fs, growth.
Exit codes: 0 success / true / terminated, 1 false / invalid / not provable,
2 parse error, 3 budget exhausted.
"""

from __future__ import annotations

import argparse
import json
import sys

from .calculus import (
    NotProvable,
    certificate_from_json,
    certificate_to_json_obj,
    check_derivation,
)
from .fundseq import F_witness, Found, G_witness, fs_veblen, step_iter
from .ordinals import OrdinalParseError, cmp, parse_ordinal, print_ordinal
from .proving import prove_le, prove_lt
from .syntax import ParseError, parse_formula, parse_worm, print_formula, print_worm
from .worms import o_star, to_nf

EXIT_OK = 0
EXIT_FALSE = 1
EXIT_PARSE = 2
EXIT_BUDGET = 3


def _parse_error(err) -> int:
    print("error: %s" % err, file=sys.stderr)
    return EXIT_PARSE


def cmd_fmt(args) -> int:
    try:
        f = parse_formula(args.text)
    except ParseError as err:
        return _parse_error(err)
    out = print_formula(f)
    print(json.dumps({"formula": out}) if args.json else out)
    return EXIT_OK


def cmd_ord(args) -> int:
    try:
        w = parse_worm(args.worm)
    except ParseError as err:
        return _parse_error(err)
    out = print_ordinal(o_star(w))
    print(json.dumps({"ordinal": out}) if args.json else out)
    return EXIT_OK


def cmd_cmp(args) -> int:
    try:
        a = parse_worm(args.a)
        b = parse_worm(args.b)
    except ParseError as err:
        return _parse_error(err)
    c = cmp(o_star(a), o_star(b))
    out = {-1: "LT", 0: "EQ", 1: "GT"}[c]
    print(json.dumps({"order": out}) if args.json else out)
    return EXIT_OK


def cmd_nf(args) -> int:
    try:
        w = parse_worm(args.worm)
    except ParseError as err:
        return _parse_error(err)
    out = print_worm(to_nf(w))
    print(json.dumps({"nf": out}) if args.json else out)
    return EXIT_OK


def cmd_prove(args) -> int:
    try:
        a = parse_worm(args.a)
        b = parse_worm(args.b)
    except ParseError as err:
        return _parse_error(err)
    try:
        cert = prove_lt(a, b) if args.mode == "lt" else prove_le(a, b)
    except NotProvable as err:
        print("not provable: %s" % err, file=sys.stderr)
        return EXIT_FALSE
    print(json.dumps(certificate_to_json_obj(cert), sort_keys=True))
    return EXIT_OK


def cmd_check(args) -> int:
    if args.certificate == "-":
        text = sys.stdin.read()
    else:
        with open(args.certificate, "r", encoding="ascii") as fh:
            text = fh.read()
    try:
        cert = certificate_from_json(text)
    except (ValueError, KeyError, TypeError) as err:
        print("error: malformed certificate: %s" % err, file=sys.stderr)
        return EXIT_PARSE
    result = check_derivation(cert)
    if result.valid:
        print("VALID")
        return EXIT_OK
    print("INVALID %s %s" % (result.path, result.reason))
    return EXIT_FALSE


def cmd_step(args) -> int:
    try:
        w = parse_worm(args.worm)
    except ParseError as err:
        return _parse_error(err)
    trace = step_iter(w, args.budget, window=args.window)
    if args.json:
        print(trace.to_json())
    else:
        shown = [print_worm(x) for x in trace.head]
        if not trace.complete:
            shown.append("...")
            shown.extend(print_worm(x) for x in trace.tail)
        print("\n".join(shown))
        print(
            "%s after %d steps (budget %d)"
            % (
                "terminated" if trace.terminated else "budget exhausted",
                trace.steps_used,
                trace.budget,
            )
        )
    return EXIT_OK if trace.terminated else EXIT_BUDGET


def cmd_fs(args) -> int:
    try:
        xi = parse_ordinal(args.ordinal)
    except OrdinalParseError as err:
        return _parse_error(err)
    out = print_ordinal(fs_veblen(xi, args.x))
    print(json.dumps({"ordinal": out}) if args.json else out)
    return EXIT_OK


def cmd_growth(args) -> int:
    fn = F_witness if args.function == "F" else G_witness
    result = fn(args.m, args.budget)
    if isinstance(result, Found):
        print(
            json.dumps({"found": result.steps})
            if args.json
            else "Found %d" % result.steps
        )
        return EXIT_OK
    print(
        json.dumps({"budget_exhausted": result.steps})
        if args.json
        else "BudgetExhausted %d" % result.steps
    )
    return EXIT_BUDGET


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="bracketcalc",
        description="Bracket worm notation: parse, compare, normalize, "
        "prove, check, and step down.",
    )
    p.add_argument("--json", action="store_true", help="machine readable output")
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("fmt", help="canonicalize a formula or worm")
    sp.add_argument("text")
    sp.set_defaults(func=cmd_fmt)

    sp = sub.add_parser("ord", help="order type of a worm")
    sp.add_argument("worm")
    sp.set_defaults(func=cmd_ord)

    sp = sub.add_parser("cmp", help="compare two worms")
    sp.add_argument("a")
    sp.add_argument("b")
    sp.set_defaults(func=cmd_cmp)

    sp = sub.add_parser("nf", help="canonical normal form of a worm")
    sp.add_argument("worm")
    sp.set_defaults(func=cmd_nf)

    sp = sub.add_parser("prove", help="derivation certificate for an ordering")
    sp.add_argument("mode", choices=("lt", "le"))
    sp.add_argument("a")
    sp.add_argument("b")
    sp.set_defaults(func=cmd_prove)

    sp = sub.add_parser("check", help="check a certificate (file or - for stdin)")
    sp.add_argument("certificate")
    sp.set_defaults(func=cmd_check)

    sp = sub.add_parser("step", help="iterate the bracket fundamental sequence")
    sp.add_argument("worm")
    sp.add_argument("--budget", type=int, default=10000)
    sp.add_argument("--window", type=int, default=64)
    sp.set_defaults(func=cmd_step)

    sp = sub.add_parser("fs", help="one fundamental-sequence step of an ordinal")
    sp.add_argument("ordinal")
    sp.add_argument("x", type=int)
    sp.set_defaults(func=cmd_fs)

    sp = sub.add_parser("growth", help="step-down witness counts")
    sp.add_argument("function", choices=("F", "G"))
    sp.add_argument("m", type=int)
    sp.add_argument("--budget", type=int, default=10000)
    sp.set_defaults(func=cmd_growth)

    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
