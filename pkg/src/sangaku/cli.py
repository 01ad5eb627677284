"""Command-line interface.

    sangaku construct --r 1 --r-prime 2
    sangaku verify --r 1 --r-prime 2
    sangaku reverse --r1 1 --r2 7 --d 10
    sangaku sweep --mode forward --count 200 --seed 42
    sangaku render --r 1 --r-prime 2 --out fig.svg

Reports are JSON on stdout; errors are one line on stderr, ``error: CODE: message``.
Exit codes: 0 success, 1 claim or consistency failure, 2 invalid input.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Optional, Sequence

from . import __version__
from .errors import InvalidInput, SangakuError
from .exactnum import format_algnum, format_rational, parse_rational, to_decimal
from .geom import Circle, Line, Point
from .hirotaka import (
    construct_forward,
    equivalence_check,
    make_pair,
    sweep,
    verify_forward,
)
from .render import RenderOptions, pair_point_names, render_forward, render_pair

APPROX_DIGITS = 12


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InvalidInput(message)


def rational(text: str) -> Fraction:
    return parse_rational(text)


def _positive_int(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise InvalidInput(f"not an integer: {text!r}") from None
    if n < 1:
        raise InvalidInput(f"expected a positive integer, got {n}")
    return n


def _int(text: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise InvalidInput(f"not an integer: {text!r}") from None


# -- serialization ---------------------------------------------------------------


def _num(x) -> dict:
    return {"exact": format_algnum(x), "approx": to_decimal(x, APPROX_DIGITS)}


def witness(obj) -> dict:
    """Exact text plus a 12-significant-digit approximation."""
    if isinstance(obj, Point):
        return {
            "exact": f"({format_algnum(obj.x)}, {format_algnum(obj.y)})",
            "approx": f"({to_decimal(obj.x, APPROX_DIGITS)}, {to_decimal(obj.y, APPROX_DIGITS)})",
        }
    if isinstance(obj, Line):
        return {
            "exact": _line_text(obj, format_algnum),
            "approx": _line_text(obj, lambda v: to_decimal(v, APPROX_DIGITS)),
        }
    if isinstance(obj, Circle):
        c = witness(obj.center)
        return {
            "exact": f"center {c['exact']} radius {format_algnum(obj.radius)}",
            "approx": f"center {c['approx']} radius {to_decimal(obj.radius, APPROX_DIGITS)}",
        }
    return _num(obj)


def _line_text(line: Line, fmt) -> str:
    return f"({fmt(line.a)})*x + ({fmt(line.b)})*y + ({fmt(line.c)}) = 0"


def _report(command: str, inputs: dict, flags: dict, witnesses: dict, failures: list, **extra) -> dict:
    doc = {
        "command": command,
        "inputs": inputs,
        "flags": flags,
        "witnesses": {name: witness(obj) for name, obj in witnesses.items()},
        "failures": failures,
    }
    doc.update(extra)
    doc["version"] = __version__
    return doc


def _jsonable(x):
    if isinstance(x, Fraction):
        return format_rational(x)
    if isinstance(x, dict):
        return {k: _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


def _emit(doc: dict, out: Optional[str] = None) -> None:
    text = json.dumps(_jsonable(doc), indent=2) + "\n"
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# -- commands ------------------------------------------------------------------


def _forward_inputs(args) -> dict:
    return {"r": format_rational(args.r), "r_prime": format_rational(args.r_prime)}


def cmd_construct(args) -> int:
    cfg = construct_forward(args.r, args.r_prime)
    witnesses: dict = {"circle_c": cfg.circle_c, "circle_c_prime": cfg.circle_c_prime}
    witnesses.update(cfg.points())
    witnesses.update(cfg.lines())
    _emit(_report("construct", _forward_inputs(args), {}, witnesses, []), args.out)
    return 0


def cmd_verify(args) -> int:
    report = verify_forward(construct_forward(args.r, args.r_prime))
    failures = [name for name, ok in report.flags.items() if not ok]
    _emit(_report("verify", _forward_inputs(args), report.flags, report.witnesses, failures))
    return 0 if not failures else 1


def _make_pair(args):
    if args.d is None and args.d_squared is None:
        raise InvalidInput("one of --d / --d-squared is required")
    if args.d is not None and args.d_squared is not None:
        raise InvalidInput("--d and --d-squared are mutually exclusive")
    pair = make_pair(args.r1, args.r2, args.d, d_squared=args.d_squared)
    inputs = {"r1": format_rational(args.r1), "r2": format_rational(args.r2)}
    if args.d is not None:
        inputs["d"] = format_rational(args.d)
    else:
        inputs["d_squared"] = format_rational(args.d_squared)
    return pair, inputs


def cmd_reverse(args) -> int:
    pair, inputs = _make_pair(args)
    rep = equivalence_check(pair)
    witnesses: dict = {}
    for i, w in enumerate(pair.external):
        witnesses[f"external{i + 1}"] = w.line
    for i, w in enumerate(pair.internal):
        witnesses[f"internal{i + 1}"] = w.line
    witnesses.update({k: v for k, v in pair_point_names(pair).items() if k.startswith("T")})
    if rep.quadruple_lines is not None:
        for i, line in enumerate(rep.quadruple_lines):
            witnesses[f"quadruple{i + 1}"] = line
    failures = [] if rep.consistent else ["consistent"]
    _emit(_report("reverse", inputs, rep.flags(), witnesses, failures))
    return 0 if rep.consistent else 1


def cmd_sweep(args) -> int:
    summary = sweep(args.mode, args.seed, args.count)
    inputs = {"mode": args.mode, "seed": str(args.seed), "count": str(args.count)}
    failures = [summary.first_counterexample] if summary.first_counterexample else []
    doc = _report(
        "sweep", inputs, {"all_passed": summary.failures == 0}, {}, failures,
        summary=summary.to_dict(),
    )
    _emit(doc)
    return 0 if summary.failures == 0 else 1


def cmd_render(args) -> int:
    opts = RenderOptions(
        canvas_size=args.canvas,
        decimal_digits=args.digits,
        show_labels=not args.no_labels,
    )
    forward = args.r is not None or args.r_prime is not None
    pair_mode = any(v is not None for v in (args.r1, args.r2, args.d, args.d_squared))
    if forward == pair_mode:
        raise InvalidInput("give either --r/--r-prime or --r1/--r2/--d")
    if forward:
        if args.r is None or args.r_prime is None:
            raise InvalidInput("--r and --r-prime are both required")
        svg = render_forward(construct_forward(args.r, args.r_prime), opts)
        inputs = _forward_inputs(args)
    else:
        if args.r1 is None or args.r2 is None:
            raise InvalidInput("--r1 and --r2 are both required")
        pair, inputs = _make_pair(args)
        svg = render_pair(pair, opts)
    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write(svg)
    inputs["out"] = args.out
    _emit(_report("render", inputs, {}, {}, []))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="sangaku", description="Exact checks of the HI-028 two-circle theorem.")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    def forward_args(p, required=True):
        p.add_argument("--r", type=rational, required=required, help="radius of c (P/Q)")
        p.add_argument("--r-prime", type=rational, required=required, help="radius of c' (P/Q)")

    def pair_args(p, required=True):
        p.add_argument("--r1", type=rational, required=required)
        p.add_argument("--r2", type=rational, required=required)
        p.add_argument("--d", type=rational, help="center distance (P/Q)")
        p.add_argument("--d-squared", type=rational, help="squared center distance, for irrational d")

    p = sub.add_parser("construct", help="emit the forward configuration")
    forward_args(p)
    p.add_argument("--out", help="write JSON here instead of stdout")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", help="check every claim for (r, r')")
    forward_args(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("reverse", help="check the equivalence for a general pair")
    pair_args(p)
    p.set_defaults(func=cmd_reverse)

    p = sub.add_parser("sweep", help="seeded random sweep")
    p.add_argument("--mode", choices=("forward", "reverse"), required=True)
    p.add_argument("--count", type=_positive_int, required=True)
    p.add_argument("--seed", type=_int, default=0)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("render", help="write an SVG figure")
    forward_args(p, required=False)
    pair_args(p, required=False)
    p.add_argument("--out", required=True)
    p.add_argument("--canvas", type=_positive_int, default=600)
    p.add_argument("--digits", type=_positive_int, default=8)
    p.add_argument("--no-labels", action="store_true")
    p.set_defaults(func=cmd_render)
    return parser


def run(argv: Optional[Sequence[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except SangakuError as exc:
        msg = " ".join(str(exc).split())
        print(f"error: {exc.code}: {msg}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: IO_ERROR: {' '.join(str(exc).split())}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())
