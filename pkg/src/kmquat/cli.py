"""Command-line front end: ``kmquat <command> ...``.

Exit codes: 0 success, 1 verification failure, 2 input or usage error.
"""
from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from . import quotients, rep, suites
from .lie import UniversalAlgebra, UnsupportedMarkerPair
from .realization import GCMError, gcm_violations, realize, realize_matrix
from .syntax import ParseError, check_ranges, format_element, parse
from .report import Report

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_INPUT)


def load_matrix(source: str) -> tuple[list[list[int]], list[list[int]] | None]:
    """Inline JSON (``[[2,-1],[-1,2]]``) or a path to {"matrix": ..., "B0": ...}."""
    text = source.strip()
    try:
        data = json.loads(text) if text.startswith("[") or text.startswith("{") else json.loads(Path(source).read_text())
    except FileNotFoundError:
        raise InputError(f"--matrix: no such file {source!r}")
    except json.JSONDecodeError as exc:
        raise InputError(f"--matrix: invalid JSON ({exc})")
    if isinstance(data, list):
        data = {"matrix": data}
    if not isinstance(data, dict) or "matrix" not in data:
        raise InputError('--matrix: expected a matrix or an object with a "matrix" key')
    a = data["matrix"]
    if not (isinstance(a, list) and a and all(isinstance(r, list) for r in a)):
        raise InputError("--matrix: matrix must be a non-empty list of rows")
    if any(not isinstance(x, int) or isinstance(x, bool) for r in a for x in r):
        raise InputError("--matrix: entries must be integers")
    return a, data.get("B0")


def _parse_weight(text: str | None) -> list[Fraction] | None:
    if text is None:
        return None
    try:
        return [Fraction(x) for x in text.split(",")]
    except (ValueError, ZeroDivisionError):
        raise InputError(f"--weight: expected comma-separated rationals, got {text!r}")


def _parse_degree(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.strip("()").split(","))
    except ValueError:
        raise InputError(f"--degree: expected comma-separated integers, got {text!r}")


def _emit(obj) -> None:
    print(json.dumps(obj, sort_keys=False))


def _realize(args):
    a, b0 = load_matrix(args.matrix)
    return realize(a, b0)


# -- commands -----------------------------------------------------------------


def cmd_validate(args) -> int:
    a, _ = load_matrix(args.matrix)
    violations = gcm_violations(a)
    if violations:
        _emit(
            {
                "valid": False,
                "violations": [
                    {"axiom": type(v).__name__, "cell": [v.i, v.j], "value": v.value} for v in violations
                ],
            }
        )
        return EXIT_FAIL
    R = realize(a)
    print(f"valid GCM, n={R.n}, r={R.r}")
    return EXIT_OK


def cmd_realize(args) -> int:
    a, b0 = load_matrix(args.matrix)
    R = realize_matrix(a, b0) if args.no_check else realize(a, b0)
    _emit(R.to_json())
    return EXIT_OK


def cmd_bracket(args) -> int:
    R = _realize(args)
    alg = UniversalAlgebra(R)
    try:
        expr = parse(args.expr)
        check_ranges(expr, alg)
    except ParseError as exc:
        print(f"ParseError: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except IndexError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    cfg = rep.RepConfig.generic(R, args.trunc, _parse_weight(args.weight)) if args.oracle else None
    try:
        value = alg.evaluate(expr)
    except UnsupportedMarkerPair as exc:
        if not args.oracle:
            print(f"UnsupportedMarkerPair: {exc}", file=sys.stderr)
            return EXIT_INPUT
        op = rep.expr_operator(expr, cfg)
        table = {}
        for w in cfg.words(cfg.L - rep.expr_growth(expr)):
            image = op(rep.TensorElement.basis(w))
            if image:
                table[rep.word_str(w)] = image.to_json()
        _emit({"check": "oracle-only", "generator": args.expr, "status": "pass", "action": table})
        return EXIT_OK
    print(format_element(value, alg))
    if args.oracle:
        report = rep.equivalence_check(expr, alg, cfg)
        _emit(report.to_json())
        return EXIT_OK if report.ok else EXIT_FAIL
    return EXIT_OK


def cmd_verify(args) -> int:
    R = _realize(args)
    reports: list[Report] = suites.run_suite(
        args.suite,
        R,
        L=args.trunc,
        seed=args.seed,
        weight=_parse_weight(args.weight),
        max_ht=args.max_height,
        trials=args.trials,
    )
    failed = [r for r in reports if not r.ok]
    for r in reports:
        if args.verbose or not r.ok:
            _emit(r.to_json())
    summary = {}
    for r in reports:
        s = summary.setdefault(r.check, {"pass": 0, "fail": 0, "n/a": 0})
        s[r.status] += 1
    _emit({"summary": summary, "status": "fail" if failed else "pass"})
    return EXIT_FAIL if failed else EXIT_OK


def cmd_mult(args) -> int:
    a, b0 = load_matrix(args.matrix)
    algebras = quotients.ALGEBRAS if args.algebra == "all" else (args.algebra,)
    ctx = quotients.QuotientContext(UniversalAlgebra(realize(a, b0)), args.max_height)
    table = quotients.multiplicities(a, args.max_height, algebras, ctx=ctx)
    if args.format == "json":
        _emit(table.to_json())
    else:
        sys.stdout.write(table.to_tsv())
    return EXIT_OK


def cmd_radical(args) -> int:
    R = _realize(args)
    ctx = quotients.QuotientContext(UniversalAlgebra(R), args.max_height)
    alpha = _parse_degree(args.degree)
    if len(alpha) != R.n:
        raise InputError(f"--degree: need {R.n} entries")
    if not any(alpha) or (any(a < 0 for a in alpha) and any(a > 0 for a in alpha)):
        raise InputError("--degree: need a nonzero degree with entries of one sign")
    sector = "-" if any(a < 0 for a in alpha) else "+"
    alpha = tuple(abs(a) for a in alpha)
    comp = ctx.radical(alpha, sector) if args.ideal == "radical" else ctx.serre_ideal(alpha, sector)
    _emit(
        {
            "degree": [(-a if sector == "-" else a) for a in alpha],
            "ideal": args.ideal,
            "freeDim": comp.free_dim,
            "dim": comp.dim,
            "basis": [format_element(x, ctx.alg) for x in comp.elements()],
        }
    )
    return EXIT_OK


def _positive(minimum):
    def check(text):
        try:
            v = int(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
        if v < minimum:
            raise argparse.ArgumentTypeError(f"must be >= {minimum}, got {v}")
        return v

    return check


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="kmquat", description="Exact quaternion Kac-Moody algebra computations.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def with_matrix(sp):
        sp.add_argument("--matrix", required=True, help='JSON file {"matrix": [[...]], "B0": ...} or inline [[...]]')
        return sp

    s = with_matrix(sub.add_parser("validate", help="check the generalized Cartan matrix axioms"))
    s.set_defaults(func=cmd_validate)

    s = with_matrix(sub.add_parser("realize", help="print the realization as JSON"))
    s.add_argument("--no-check", action="store_true", help="skip the GCM axioms (any square integer matrix)")
    s.set_defaults(func=cmd_realize)

    s = with_matrix(sub.add_parser("bracket", help="evaluate a bracket expression to normal form"))
    s.add_argument("expr")
    s.add_argument("--oracle", action="store_true", help="re-evaluate with the tensor representation")
    s.add_argument("--trunc", type=_positive(2), default=5)
    s.add_argument("--weight", help="comma-separated rationals on the Cartan basis")
    s.set_defaults(func=cmd_bracket)

    s = with_matrix(sub.add_parser("verify", help="run verification suites"))
    s.add_argument("--suite", default="all", choices=suites.SUITES + ("all",))
    s.add_argument("--trunc", type=_positive(2), default=5)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--weight")
    s.add_argument("--max-height", type=_positive(1), default=4)
    s.add_argument("--trials", type=_positive(1), default=200, help="random Jacobi triples")
    s.add_argument("-v", "--verbose", action="store_true", help="print passing reports too")
    s.set_defaults(func=cmd_verify)

    s = with_matrix(sub.add_parser("mult", help="multiplicity table"))
    s.add_argument("--algebra", default="all", choices=quotients.ALGEBRAS + ("all",))
    s.add_argument("--max-height", type=_positive(1), required=True)
    s.add_argument("--format", default="tsv", choices=("tsv", "json"))
    s.set_defaults(func=cmd_mult)

    s = with_matrix(sub.add_parser("radical", help="basis of a radical (or Serre ideal) component"))
    s.add_argument("--degree", required=True, help="root vector, e.g. 1,1 or -1,-1")
    s.add_argument("--max-height", type=_positive(1), default=4)
    s.add_argument("--ideal", default="radical", choices=("radical", "serre"))
    # let "--degree -1,-1" through as a value rather than an unknown flag
    s._negative_number_matcher = re.compile(r"^-\d[\d,-]*$")
    s.set_defaults(func=cmd_radical)
    return p


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (InputError, GCMError, quotients.HeightExceeded) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
