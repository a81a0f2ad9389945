"""Command-line front end.

    genconchoid line --focus X,Y --n0 X,Y --s X,Y --offset EXPR [--m INT] OUTPUTS
    genconchoid line --focus X,Y --line-y EXPR --x-range A:B --offset EXPR [--m INT] OUTPUTS
    genconchoid arc --focus X,Y --center X,Y --radius EXPR --theta A:B --offset EXPR [--m INT] OUTPUTS
    genconchoid presets --list
    genconchoid presets NAME OUTPUTS

OUTPUTS is any of --csv PATH, --svg PATH, --json PATH, --print-summary.
Every number is a constant expression (``9/8*pi``, ``136/100``).

Exit codes: 0 success, 2 bad flags or expressions, 3 construction failure,
1 when an output file cannot be written.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, field
from pathlib import Path

from .curves import CircularArcCurve, LineSegmentCurve
from .errors import ExprSyntaxError, GpcError, UnknownPreset
from .expr import constant, parse, render
from .geometry import Point2
from .output import PlotSpec, TableSpec, write_csv, write_json, write_svg
from .sampler import GpcConfig, GpcResult, sample_gpc

EXIT_OK = 0
EXIT_IO = 1
EXIT_USAGE = 2
EXIT_CONSTRUCTION = 3

DEFAULT_M = 180


@dataclass(frozen=True)
class CliInvocation:
    subcommand: str
    flags: dict[str, str] = field(default_factory=dict)

    def argv(self) -> list[str]:
        out = [self.subcommand]
        for name, value in self.flags.items():
            out.append(f"--{name}={value}")
        return out


PRESETS: dict[str, CliInvocation] = {
    "nicomedes": CliInvocation("line", {"focus": "0,0", "line-y": "1", "x-range": "-3:3", "offset": "2", "m": "180"}),
    "line-linear": CliInvocation("line", {"focus": "0,0", "line-y": "1", "x-range": "-3:3", "offset": "l", "m": "180"}),
    "line-sin": CliInvocation("line", {"focus": "0,0", "line-y": "1", "x-range": "-4:4", "offset": "sin(l)", "m": "180"}),
    "line-ln": CliInvocation("line", {"focus": "0,0", "line-y": "1", "x-range": "-2:2", "offset": "ln(l)", "m": "180"}),
    "limacon": CliInvocation(
        "arc",
        {"focus": "0,0", "center": "0,113/100", "radius": "80/100", "theta": "0:2*pi", "offset": "136/100", "m": "180"},
    ),
    "circ-linear": CliInvocation(
        "arc", {"focus": "0,0", "center": "0,7/2", "radius": "2", "theta": "0:2*pi", "offset": "l", "m": "180"}
    ),
    "circ-sin": CliInvocation(
        "arc", {"focus": "0,0", "center": "0,7/2", "radius": "2", "theta": "0:2*pi", "offset": "2*sin(l)", "m": "180"}
    ),
    "circ-ln": CliInvocation(
        "arc", {"focus": "0,0", "center": "0,7/2", "radius": "2", "theta": "0:2*pi", "offset": "ln(l)", "m": "180"}
    ),
}


def presets(name: str) -> CliInvocation:
    try:
        return PRESETS[name]
    except KeyError:
        raise UnknownPreset(f"unknown preset {name!r}; choose from {', '.join(PRESETS)}") from None


# -- flag value parsers ------------------------------------------------------


def _number(text: str) -> float:
    try:
        return constant(text)
    except ExprSyntaxError as exc:
        raise argparse.ArgumentTypeError(f"{text!r}: {exc}") from None


def _pair(sep: str):
    def convert(text: str) -> tuple[float, float]:
        parts = text.split(sep)
        if len(parts) != 2:
            raise argparse.ArgumentTypeError(f"{text!r}: expected two values separated by {sep!r}")
        return _number(parts[0]), _number(parts[1])

    convert.__name__ = "pair"
    return convert


def _offset(text: str):
    try:
        return parse(text)
    except ExprSyntaxError as exc:
        raise argparse.ArgumentTypeError(f"{text!r}: {exc}") from None


def _count(text: str) -> int:
    try:
        m = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from None
    if m < 2:
        raise argparse.ArgumentTypeError("m must be at least 2")
    return m


_point = _pair(",")
_range = _pair(":")


class _Parser(argparse.ArgumentParser):
    def exit(self, status=0, message=None):
        if message:
            self._print_message(message, sys.stderr)
        raise _Exit(status)


class _Exit(Exception):
    def __init__(self, code: int):
        self.code = code


def _add_outputs(p: argparse.ArgumentParser):
    g = p.add_argument_group("outputs")
    g.add_argument("--csv", type=Path, metavar="PATH", help="write the calculation table as CSV")
    g.add_argument("--svg", type=Path, metavar="PATH", help="write an SVG plot")
    g.add_argument("--json", type=Path, metavar="PATH", help="write the full result as JSON")
    g.add_argument("--print-summary", action="store_true", help="print a short summary to stdout")
    g.add_argument("--precision", type=int, default=3, metavar="INT", help="CSV decimals (default 3)")
    g.add_argument("--show-rays", action="store_true", help="draw the focal ray of every sample in the SVG")


def _add_common(p: argparse.ArgumentParser):
    p.add_argument("--focus", type=_point, required=True, metavar="X,Y", help="focus point O")
    p.add_argument("--offset", type=_offset, required=True, metavar="EXPR", help="offset function f(l), e.g. 'l + sin(l)'")
    p.add_argument("--m", type=_count, default=DEFAULT_M, metavar="INT", help=f"number of samples (default {DEFAULT_M})")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="genconchoid",
        description="Generate generalized planar conchoids of a line or circular arc.",
        allow_abbrev=False,
    )
    sub = parser.add_subparsers(dest="subcommand", required=True, parser_class=_Parser)

    line = sub.add_parser(
        "line",
        help="line-segment base curve",
        description="Base curve is the segment N->S, given either by endpoints or as y = const over an x range.",
        allow_abbrev=False,
    )
    _add_common(line)
    line.add_argument("--n0", type=_point, metavar="X,Y", help="start point N")
    line.add_argument("--s", type=_point, metavar="X,Y", help="end point S")
    line.add_argument("--line-y", type=_number, metavar="EXPR", help="horizontal line height (with --x-range)")
    line.add_argument("--x-range", type=_range, metavar="A:B", help="abscissa of N and S (with --line-y)")
    _add_outputs(line)

    arc = sub.add_parser(
        "arc",
        help="circular-arc base curve",
        description="Base curve is the arc of the circle (center, radius) from angle A to angle B.",
        allow_abbrev=False,
    )
    _add_common(arc)
    arc.add_argument("--center", type=_point, required=True, metavar="X,Y", help="circle centre")
    arc.add_argument("--radius", type=_number, required=True, metavar="EXPR", help="circle radius")
    arc.add_argument("--theta", type=_range, required=True, metavar="A:B", help="start and end angles in radians")
    _add_outputs(arc)

    pre = sub.add_parser(
        "presets",
        help="run one of the built-in figure parameter sets",
        description=f"Presets: {', '.join(PRESETS)}.",
        allow_abbrev=False,
    )
    pre.add_argument("name", nargs="?", help="preset name")
    pre.add_argument("--list", action="store_true", help="list presets and their flags")
    _add_outputs(pre)
    return parser


def _value_flags(parser: argparse.ArgumentParser) -> set[str]:
    flags = set()
    subparsers = [a for a in parser._actions if isinstance(a, argparse._SubParsersAction)]
    for action in subparsers:
        for p in action.choices.values():
            for a in p._actions:
                if a.nargs != 0:
                    flags.update(s for s in a.option_strings if s.startswith("--"))
    return flags


def _glue_values(argv: list[str], value_flags: set[str]) -> list[str]:
    """Rewrite ``--flag VALUE`` as ``--flag=VALUE`` so values like ``-3:3`` are not mistaken for flags."""
    out = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        if tok in value_flags and i + 1 < len(argv):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
        else:
            out.append(tok)
            i += 1
    return out


def _build_config(args) -> GpcConfig:
    focus = Point2(*args.focus)
    if args.subcommand == "line":
        curve = LineSegmentCurve(Point2(*args.n0), Point2(*args.s))
    else:
        theta_n, theta_s = args.theta
        curve = CircularArcCurve(Point2(*args.center), args.radius, theta_n, theta_s)
    return GpcConfig(focus=focus, curve=curve, offset=args.offset, m=args.m)


def _summary(result: GpcResult) -> str:
    valid = result.valid_samples
    lines = [
        f"offset: {render(result.config.offset)}",
        f"samples: {len(result.samples)}",
        f"valid: {len(valid)}",
        f"dropped: {result.dropped}",
    ]
    if valid:
        pts = [q for s in valid for q in (s.q_inner, s.q_outer)]
        lines.append(
            "bbox: "
            f"[{min(p.x for p in pts):.6g}, {max(p.x for p in pts):.6g}] x "
            f"[{min(p.y for p in pts):.6g}, {max(p.y for p in pts):.6g}]"
        )
    return "\n".join(lines)


def _emit(result: GpcResult, args) -> None:
    if args.csv:
        args.csv.write_text(write_csv(result, TableSpec(precision=args.precision)))
    if args.svg:
        args.svg.write_text(write_svg(result, PlotSpec(show_rays=args.show_rays)))
    if args.json:
        args.json.write_text(write_json(result))
    if args.print_summary:
        print(_summary(result))


def _parse(parser: argparse.ArgumentParser, argv: list[str]):
    args = parser.parse_args(_glue_values(argv, _value_flags(parser)))
    if args.subcommand == "presets":
        if args.list:
            return args
        if not args.name:
            parser.error("presets: give a preset name or --list")
        outputs = list(argv[1:])
        outputs.remove(args.name)
        inv = presets(args.name)
        return _parse(parser, inv.argv() + outputs)
    if args.subcommand == "line":
        endpoints = args.n0 is not None or args.s is not None
        horizontal = args.line_y is not None or args.x_range is not None
        if endpoints == horizontal:
            parser.error("line: give either --n0 and --s, or --line-y and --x-range")
        if endpoints and (args.n0 is None or args.s is None):
            parser.error("line: --n0 and --s must be given together")
        if horizontal:
            if args.line_y is None or args.x_range is None:
                parser.error("line: --line-y and --x-range must be given together")
            (a, b), y = args.x_range, args.line_y
            args.n0, args.s = (a, y), (b, y)
    if not (args.csv or args.svg or args.json or args.print_summary):
        parser.error("no output requested; add --csv, --svg, --json or --print-summary")
    if not 0 <= args.precision <= 12:
        parser.error("--precision must lie in [0, 12]")
    return args


def run(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = _parse(parser, argv)
    except _Exit as exc:
        return exc.code
    except UnknownPreset as exc:
        print(f"genconchoid: error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    if args.subcommand == "presets":
        for name, inv in PRESETS.items():
            print(f"{name}: {' '.join(inv.argv())}")
        return EXIT_OK

    try:
        result = sample_gpc(_build_config(args))
    except GpcError as exc:
        print(f"genconchoid: construction failed: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_CONSTRUCTION
    try:
        _emit(result, args)
    except OSError as exc:
        print(f"genconchoid: cannot write output: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


def main() -> None:
    sys.exit(run())
