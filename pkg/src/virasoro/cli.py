"""Command-line front end.

Exit codes: 0 success / all checks pass, 1 a verification or check failed,
2 usage, parse or truncation-boundary errors (diagnostics on stderr).
"""
from __future__ import annotations

import argparse
import contextlib
import json
import sys
from fractions import Fraction

from . import lie
from .dsl import element_to_dict, format_element, format_rational, parse, parse_rational, to_element
from .errors import SourceError, VirasoroError
from .modules import DEFAULT_DEPTH, DEFAULT_WINDOW, action_defects, intermediate_series, verma
from .pbw import ASC, OrderSpec, cartan_polynomial, rational_roots, reduce_mod_left_ideal
from .suite import SuiteConfig, run_all

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class _UsageError(Exception):
    pass


def _rational(text):
    try:
        return parse_rational(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _order(text):
    try:
        return OrderSpec.from_string(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _perturbation(text):
    parts = text.split(",")
    if len(parts) not in (3, 4):
        raise argparse.ArgumentTypeError("expected I,J,DE[,DC]")
    try:
        i, j = int(parts[0]), int(parts[1])
        deltas = [parse_rational(p) for p in parts[2:]]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None
    if i == j:
        raise argparse.ArgumentTypeError("I and J must differ")
    return (i, j, deltas[0], deltas[1] if len(deltas) > 1 else Fraction(0))


class _Parser(argparse.ArgumentParser):
    # "-e(1)", "-2*e(0)" and "-4,-3,1" are values, not flags
    _VALUE_CHARS = set("(),*/^ ")

    def _parse_optional(self, arg_string):
        if arg_string[:1] == "-" and arg_string[1:2] != "-" and self._VALUE_CHARS & set(arg_string):
            return None
        return super()._parse_optional(arg_string)

    def error(self, message):
        raise _UsageError(f"{self.prog}: error: {message}")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="virasoro", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("verify", help="run the verification battery")
    p.add_argument("--only", action="append", metavar="CHECK", help="check name or dotted prefix; repeatable")
    p.add_argument("--range", type=int, default=10, dest="bracket_range", help="upper bound of k, l in bracket facts")
    p.add_argument("--depth", type=int, default=10, help="Verma depth for dimension and action checks")
    p.add_argument("--window", type=int, default=10, help="intermediate-series window radius")
    p.add_argument("--seed", type=int, default=2005)
    p.add_argument("--perturb", type=_perturbation, action="append", metavar="I,J,DE[,DC]",
                   help="negative control: shift the constants of [e(I), e(J)]")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("nf", help="PBW normal form of an expression")
    p.add_argument("expr")
    p.add_argument("--order", type=_order, default=ASC)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("reduce", help="coset representative modulo U e(g)")
    p.add_argument("expr")
    p.add_argument("--ann", type=int, required=True, metavar="G")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("mul", help="product of two expressions")
    p.add_argument("left")
    p.add_argument("right")
    p.add_argument("--order", type=_order, default=ASC)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("roots", help="rational roots of a polynomial in e(0)")
    p.add_argument("expr")
    p.add_argument("--shift", type=_rational, default=Fraction(0), help="report roots of p(e(0) + SHIFT)")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("verma", help="truncated Verma module queries")
    p.add_argument("--h", type=_rational, required=True)
    p.add_argument("--c", type=_rational, required=True, dest="chi")
    p.add_argument("--depth", type=int, default=DEFAULT_DEPTH)
    p.add_argument("--dims", action="store_true")
    p.add_argument("--singular", action="store_true", help="joint kernel of e(1), e(2) at --weight")
    p.add_argument("--weight", type=_rational)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("interm", help="intermediate-series module queries")
    p.add_argument("--a", type=_rational, required=True)
    p.add_argument("--b", type=_rational, required=True)
    p.add_argument("--min", type=int, default=DEFAULT_WINDOW[0], dest="k_min")
    p.add_argument("--max", type=int, default=DEFAULT_WINDOW[1], dest="k_max")
    p.add_argument("--dims", action="store_true")
    p.add_argument("--check", action="store_true", help="exact Lie-action compatibility check")
    p.add_argument("--eq10", action="store_true", help="rays y at weight --mu + 1 with e(-1)y = e(1)e(-2)y = 0 and e(2)e(-2)y = tau*y, tau != 0")
    p.add_argument("--mu", type=_rational)
    p.add_argument("--json", action="store_true")
    return parser


def _emit(args, text, payload):
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        print(text)


def _element(text, order):
    return to_element(parse(text), order)


def _cmd_verify(args):
    config = SuiteConfig(depth=args.depth, window=args.window, bracket_range=args.bracket_range, seed=args.seed)
    try:
        config.validate()
    except ValueError as exc:
        raise _UsageError(str(exc)) from None
    with contextlib.ExitStack() as stack:
        for i, j, de, dc in args.perturb or ():
            stack.enter_context(lie.perturbed_structure_constant(i, j, de, dc))
        try:
            report = run_all(config, only=args.only)
        except KeyError as exc:
            raise _UsageError(exc.args[0]) from None
    if args.json:
        print(report.to_json())
    else:
        for r in report.results:
            status = "PASS" if r.passed else "FAIL"
            print(f"{status}  {r.name}  ({r.elapsed_ms:.1f} ms)")
            if not r.passed:
                print(f"      computed: {r.computed}")
                print(f"      expected: {r.expected}")
                if r.note:
                    note = r.note if len(r.note) <= 300 else r.note[:297] + "..."
                    print(f"      note: {note}")
        s = report.summary
        if report.ok:
            print(f"all checks passed ({s['passed']}/{s['total']})")
        else:
            names = ", ".join(r.name for r in report.failed())
            print(f"{s['failed']} of {s['total']} checks failed: {names}")
    return EXIT_OK if report.ok else EXIT_FAIL


def _cmd_nf(args):
    u = _element(args.expr, args.order)
    _emit(args, format_element(u), element_to_dict(u))
    return EXIT_OK


def _cmd_reduce(args):
    if args.ann == 0:
        raise _UsageError("--ann must be nonzero")
    u = reduce_mod_left_ideal(_element(args.expr, ASC), args.ann)
    _emit(args, format_element(u), element_to_dict(u))
    return EXIT_OK


def _cmd_mul(args):
    u = _element(args.left, args.order) * _element(args.right, args.order)
    _emit(args, format_element(u), element_to_dict(u))
    return EXIT_OK


def _cmd_roots(args):
    poly = cartan_polynomial(_element(args.expr, ASC))
    if poly.is_zero():
        raise _UsageError("the zero polynomial has no finite root set")
    if poly.involves_central():
        raise _UsageError("polynomial involves c; roots needs a polynomial in e(0) only")
    roots = sorted(rational_roots(poly.shifted(args.shift)))
    text = "{" + ", ".join(format_rational(q) for q in roots) + "}"
    _emit(args, text, {"roots": [format_rational(q) for q in roots]})
    return EXIT_OK


def _dims_payload(m):
    dims = m.weight_dims()
    lines = [f"{format_rational(w)}: {d}" for w, d in dims.items()]
    return "\n".join(lines), {"dims": {format_rational(w): d for w, d in dims.items()}}


def _vector_payload(v):
    return {"weight": format_rational(v.weight),
            "coords": [[list(k) if isinstance(k, tuple) else k, format_rational(q)] for k, q in sorted(v.coords.items())]}


def _vector_text(v):
    def label(k):
        if isinstance(k, tuple):
            return "*".join(f"e({-p})" for p in k) + ("*v" if k else "v")
        return f"v_{k}"

    return " + ".join(f"{format_rational(q)}*{label(k)}" for k, q in sorted(v.coords.items())) or "0"


def _cmd_verma(args):
    if args.depth < 0:
        raise _UsageError("--depth must be nonnegative")
    m = verma(args.h, args.chi, args.depth)
    texts, payload = [], {"module": repr(m)}
    if args.dims or not args.singular:
        t, p = _dims_payload(m)
        texts.append(t)
        payload.update(p)
    if args.singular:
        if args.weight is None:
            raise _UsageError("--singular needs --weight")
        ker = m.kernel(args.weight, [1, 2])
        texts.append(f"kernel of e(1), e(2) at weight {format_rational(args.weight)}: dimension {len(ker)}")
        texts.extend(f"  {_vector_text(v)}" for v in ker)
        payload["singular"] = [_vector_payload(v) for v in ker]
    _emit(args, "\n".join(texts), payload)
    return EXIT_OK


def _cmd_interm(args):
    if args.k_min > args.k_max:
        raise _UsageError("--min must not exceed --max")
    m = intermediate_series(args.a, args.b, args.k_min, args.k_max)
    texts, payload, code = [], {"module": repr(m)}, EXIT_OK
    if args.dims or not (args.check or args.eq10):
        t, p = _dims_payload(m)
        texts.append(t)
        payload.update(p)
    if args.check:
        checked, bad = action_defects(m)
        texts.append(f"action compatibility: {checked - len(bad)}/{checked} cases exact")
        payload["check"] = {"checked": checked, "failed": len(bad)}
        if bad:
            code = EXIT_FAIL
    if args.eq10:
        if args.mu is None:
            raise _UsageError("--eq10 needs --mu")
        pairs = m.eq10_pair_search(args.mu)
        texts.append(f"kernel-pair rays at mu={format_rational(args.mu)}: {len(pairs)}")
        texts.extend(f"  tau={format_rational(p.tau)}  y={_vector_text(p.y)}  x={_vector_text(p.x)}" for p in pairs)
        payload["eq10"] = [
            {"tau": format_rational(p.tau), "x": _vector_payload(p.x), "y": _vector_payload(p.y)} for p in pairs
        ]
        if not all(p.holds_in(m) for p in pairs):
            code = EXIT_FAIL
    _emit(args, "\n".join(texts), payload)
    return code


COMMANDS = {
    "verify": _cmd_verify,
    "nf": _cmd_nf,
    "reduce": _cmd_reduce,
    "mul": _cmd_mul,
    "roots": _cmd_roots,
    "verma": _cmd_verma,
    "interm": _cmd_interm,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return COMMANDS[args.command](args)
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    except _UsageError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_USAGE
    except SourceError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        if "\n" not in exc.text:
            print(f"  {exc.text}\n  {' ' * (exc.column - 1)}^", file=sys.stderr)
        return EXIT_USAGE
    except (VirasoroError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
