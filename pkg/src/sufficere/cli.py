"""Command-line interface.

Exit status: 0 for a positive answer, 1 for a negative one, 2 for bad input.
Realizing strings go to stdout; reason codes go to stderr as ``reason=CODE``.
"""
from __future__ import annotations

import argparse
import sys

from .decide_dollar import decide_dollar
from .decide_general import decide_suffix_tree
from .oracle import BudgetExceeded, oracle_decide
from .st_construct import build_suffix_tree, realizes, to_annotated
from .stg import NoMatchingChildError, build_stg, compute_ld, ld_table, to_dot
from .tree_model import TreeFormatError, parse_tree, serialize_tree

EXIT_YES, EXIT_NO, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def _read_tree(path: str):
    try:
        if path == "-":
            text = sys.stdin.read()
        else:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return parse_tree(text)
    except TreeFormatError as exc:
        raise InputError(f"reason={exc.code}\n{exc}") from None


def _reject(reason: str) -> int:
    print(f"reason={reason}", file=sys.stderr)
    return EXIT_NO


def cmd_build(args) -> int:
    try:
        st = build_suffix_tree(args.string, dollar=args.dollar, method=args.method)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    sys.stdout.write(serialize_tree(to_annotated(st)))
    return EXIT_YES


def cmd_decide(args) -> int:
    t = _read_tree(args.file)
    verify = not args.no_verify
    if args.dollar:
        v = decide_dollar(t, verify=verify)
    else:
        v = decide_suffix_tree(t, verify=verify, trace=args.trace)
    if args.trace:
        print("location\tstep1\tstep2\tstep3\tresult", file=sys.stderr)
        for loc, *steps in v.trace:
            cells = ["-" if x is None else ("keep" if x else "drop") for x in steps]
            print(f"{loc}\t" + "\t".join(cells), file=sys.stderr)
    if not v.ok:
        return _reject(v.reason)
    print(v.string)
    return EXIT_YES


def cmd_stg(args) -> int:
    t = _read_tree(args.file)
    try:
        ld = compute_ld(t)
    except NoMatchingChildError as exc:
        print(f"reason={exc.code}", file=sys.stderr)
        raise InputError(str(exc)) from None
    show_values = args.values or not args.dot
    if show_values:
        sys.stdout.write(ld_table(t, ld))
    if args.dot:
        sys.stdout.write(to_dot(build_stg(t, ld)))
    return EXIT_YES


def cmd_oracle(args) -> int:
    t = _read_tree(args.file)
    try:
        r = oracle_decide(t, max_len=args.max_len, cap=args.cap)
    except BudgetExceeded:
        print("reason=BUDGET_EXCEEDED", file=sys.stderr)
        return EXIT_INPUT
    if not r.ok:
        return _reject("NO_REALIZER")
    print(r.string)
    return EXIT_YES


def cmd_verify(args) -> int:
    t = _read_tree(args.file)
    if realizes(args.string, t):
        print("yes")
        return EXIT_YES
    print("no")
    return EXIT_NO


def make_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="sufficere", description="Suffix tree recognition tools.")
    sub = p.add_subparsers(dest="command", required=True)

    b = sub.add_parser("build", help="print the annotated suffix tree of a string")
    b.add_argument("string")
    b.add_argument("--dollar", action="store_true", help="append the '$' terminator")
    b.add_argument("--method", choices=("naive", "ukkonen"), default="ukkonen")
    b.set_defaults(func=cmd_build)

    d = sub.add_parser("decide", help="decide whether a tree file is a suffix tree")
    d.add_argument("file", nargs="?", default="-")
    d.add_argument("--dollar", action="store_true", help="decide for '$'-terminated strings")
    d.add_argument("--trace", action="store_true", help="print per-location filter results")
    d.add_argument("--no-verify", action="store_true", help="skip rebuilding the tree from the answer")
    d.set_defaults(func=cmd_decide)

    g = sub.add_parser("stg", help="print the suffix tour graph")
    g.add_argument("file")
    g.add_argument("--dot", action="store_true", help="Graphviz output")
    g.add_argument("--values", action="store_true", help="per-node ell/d table")
    g.set_defaults(func=cmd_stg)

    o = sub.add_parser("oracle", help="shortest realizer by exhaustive search")
    o.add_argument("file")
    o.add_argument("--max-len", type=int, default=None)
    o.add_argument("--cap", type=int, default=None, help="maximum number of candidates")
    o.set_defaults(func=cmd_oracle)

    v = sub.add_parser("verify", help="check that a string realizes a tree")
    v.add_argument("file")
    v.add_argument("string")
    v.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_YES
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
