"""Command line interface: ``smoc normalize|eq|count|verify``.

Exit codes: 0 on success or a passing check, 1 on a failing check (or
``eq`` finding the terms distinct), 2 on usage, parse or validation errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import oracle, verify
from .normalform import EVEN, ODD, equal, normalize
from .oracle import ResourceLimitError
from .syntax import ParseError, ValidationError, parse, parse_bigrade, parse_type
from .trees import ColorError


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(2)


def _dump(obj) -> None:
    print(json.dumps(obj, sort_keys=False))


def _mode(args) -> str:
    return ODD if args.odd else EVEN


def cmd_normalize(args) -> int:
    _dump(normalize(parse(args.expr), _mode(args)).to_dict())
    return 0


def cmd_eq(args) -> int:
    verdict = equal(parse(args.expr1), parse(args.expr2), _mode(args))
    print(verdict)
    return 0 if verdict == "equal" else 1


def cmd_count(args) -> int:
    inputs, output = parse_type(args.type)
    bigrade = parse_bigrade(args.bigrade)
    c = oracle.closure(inputs, output, bigrade, _mode(args), limit=args.limit)
    out = c.to_dict()
    out["expected"] = oracle.count_expected(inputs, output, bigrade)
    _dump(out)
    return 0


def _verify_calls(args) -> list:
    which, lim = args.check, args.limit
    n = args.max
    calls = {
        "rho": lambda: verify.check_rho_identity(args.max_n or n or 9),
        "iota": lambda: verify.check_iota(args.max_n or n or 10),
        "shadows": lambda: verify.check_shadows(args.max_color or n or 7, limit=lim),
        "diamond": lambda: verify.check_diamond(args.max_color or n or 8, limit=lim),
        "ranks": lambda: verify.check_relation_ranks(n or 6, limit=lim),
        "odd": lambda: verify.check_odd(args.max_color or n or 8, limit=lim),
        "counts": lambda: verify.check_counts(limit=lim),
        "bijection": lambda: verify.check_bijection(args.max_color or n or 7, seed=args.seed),
        "normalizer": lambda: verify.check_normalizer(args.max_color or n or 7, limit=lim),
        "operations": lambda: verify.check_operations(args.samples, seed=args.seed),
    }
    if which == "all":
        return [calls[k] for k in ("rho", "iota", "shadows", "diamond", "ranks")]
    return [calls[which]]


def cmd_verify(args) -> int:
    ok = True
    for call in _verify_calls(args):
        report = call()
        ok &= report.passed
        _dump(report.to_dict())
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    env_limit = os.environ.get("SMOC_LIMIT")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--limit", type=int, default=int(env_limit) if env_limit else None,
                        help="resource guard: maximum universe size (default 10^6, or $SMOC_LIMIT)")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized suites")
    common.add_argument("--odd", action="store_true", help="odd self-gluings (signed mode)")

    p = _Parser(prog="smoc", description="Normal forms and checks for self-gluings and mergers.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("normalize", parents=[common], help="print the normal form of a term as JSON")
    s.add_argument("expr")
    s.set_defaults(func=cmd_normalize)

    s = sub.add_parser("eq", parents=[common], help="compare two terms")
    s.add_argument("expr1")
    s.add_argument("expr2")
    s.set_defaults(func=cmd_eq)

    s = sub.add_parser("count", parents=[common], help="count rewrite classes of one component")
    s.add_argument("--type", required=True, help='e.g. "(2,2;0)"')
    s.add_argument("--bigrade", required=True, help='e.g. "(2,1)"')
    s.set_defaults(func=cmd_count)

    s = sub.add_parser("verify", parents=[common], help="run a check and print its report")
    s.add_argument("check", choices=["rho", "iota", "shadows", "diamond", "ranks", "odd", "counts",
                                     "bijection", "normalizer", "operations", "all"])
    s.add_argument("--max", type=int, default=None, help="shared bound for the selected checks")
    s.add_argument("--max-n", type=int, default=None)
    s.add_argument("--max-color", type=int, default=None)
    s.add_argument("--samples", type=int, default=1000)
    s.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, ValidationError, ColorError, ValueError) as exc:
        print(f"smoc: error: {exc}", file=sys.stderr)
        return 2
    except ResourceLimitError as exc:
        print(f"smoc: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
