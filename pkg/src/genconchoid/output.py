"""CSV tables, SVG plots and JSON exchange for sampled conchoids."""

from __future__ import annotations

import json
import math
import xml.etree.ElementTree as ET
from dataclasses import dataclass
from decimal import ROUND_HALF_UP, Decimal

from .curves import CircularArcCurve, LineSegmentCurve, ParametricCurve
from .errors import GpcError
from .expr import parse, render
from .geometry import Point2, Vec2
from .sampler import GpcConfig, GpcResult, GpcSample, branch_polylines

SCHEMA_VERSION = 1

# Columns holding a vector expand into ``<name>_x`` and ``<name>_y``.
VECTOR_COLUMNS = {"p", "l_vec", "p_minus_o", "u", "q_inner", "q_outer"}
SCALAR_COLUMNS = {"k", "l_norm", "d", "p_minus_o_norm"}
ALL_COLUMNS = ("k", "p", "l_vec", "l_norm", "d", "p_minus_o", "p_minus_o_norm", "u", "q_inner", "q_outer")

BASE_COLUMNS = ("k", "p", "l_vec", "l_norm", "d")
RAY_COLUMNS = ("k", "p_minus_o", "p_minus_o_norm", "u")
BRANCH_COLUMNS = ("k", "q_inner", "q_outer")


@dataclass(frozen=True)
class TableSpec:
    precision: int = 3
    columns: tuple[str, ...] = ALL_COLUMNS

    def __post_init__(self):
        object.__setattr__(self, "columns", tuple(self.columns))
        if not (0 <= self.precision <= 12):
            raise GpcError(f"precision must lie in [0, 12], got {self.precision}")
        if not self.columns:
            raise GpcError("a table needs at least one column")
        unknown = [c for c in self.columns if c not in VECTOR_COLUMNS | SCALAR_COLUMNS]
        if unknown:
            raise GpcError(f"unknown table columns: {unknown}")


@dataclass(frozen=True)
class PlotSpec:
    width_px: int = 800
    height_px: int = 800
    margin_fraction: float = 0.05
    show_rays: bool = False
    show_base: bool = True
    show_focus: bool = True

    def __post_init__(self):
        if self.width_px <= 0 or self.height_px <= 0:
            raise GpcError("plot dimensions must be positive")
        if not (0.0 <= self.margin_fraction <= 0.45):
            raise GpcError(f"margin_fraction must lie in [0, 0.45], got {self.margin_fraction}")


def format_number(x: float | None, precision: int) -> str:
    """Fixed-point text, rounding half away from zero; empty for missing or non-finite values."""
    if x is None or not math.isfinite(x):
        return ""
    q = Decimal(x).quantize(Decimal(1).scaleb(-precision), rounding=ROUND_HALF_UP)
    if q.is_zero():
        q = abs(q)
    return f"{q:f}"


def _column_value(sample: GpcSample, column: str, start: Point2, focus: Point2):
    if column == "k":
        return sample.k
    if column == "p":
        return sample.p
    if column == "l_vec":
        return sample.p - start
    if column == "l_norm":
        return sample.l
    if column == "d":
        return sample.d
    if column == "p_minus_o":
        return sample.p - focus
    if column == "p_minus_o_norm":
        return (sample.p - focus).norm()
    return getattr(sample, column)


def _xy(value) -> tuple[float | None, float | None]:
    if value is None:
        return None, None
    if isinstance(value, Vec2):
        return value.dx, value.dy
    return value.x, value.y


def write_csv(result: GpcResult, spec: TableSpec = TableSpec()) -> str:
    """Calculation table with one row per sample, in k order.

    A trailing ``reason`` column is added only when some sample is invalid;
    cells an invalid sample cannot supply are left empty.
    """
    header = []
    for c in spec.columns:
        header.extend([f"{c}_x", f"{c}_y"] if c in VECTOR_COLUMNS else [c])
    with_reason = result.dropped > 0
    if with_reason:
        header.append("reason")

    start, focus = result.start, result.config.focus
    lines = [",".join(header)]
    for s in result.samples:
        cells = []
        for c in spec.columns:
            value = _column_value(s, c, start, focus)
            if c in VECTOR_COLUMNS:
                cells.extend(format_number(v, spec.precision) for v in _xy(value))
            else:
                cells.append(format_number(value, spec.precision))
        if with_reason:
            cells.append(s.reason or "")
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"


def _fmt(v: float) -> str:
    return repr(float(v))


def _points_attr(points: list[Point2]) -> str:
    return " ".join(f"{_fmt(p.x)},{_fmt(p.y)}" for p in points)


def write_svg(result: GpcResult, spec: PlotSpec = PlotSpec()) -> str:
    """Equal-aspect SVG plot with the y axis pointing up.

    Inner branch, outer branch and base curve are ``polyline`` elements with
    classes ``inner``, ``outer`` and ``base``; rays are ``line`` elements of
    class ``ray``; the focus is a ``g`` of class ``focus`` holding two lines.
    """
    inner, outer, base = branch_polylines(result)
    focus = result.config.focus

    drawn = [p for run in inner + outer for p in run]
    if spec.show_base:
        drawn += [p for run in base for p in run]
    if spec.show_focus or spec.show_rays:
        drawn.append(focus)
    xmin, xmax = min(p.x for p in drawn), max(p.x for p in drawn)
    ymin, ymax = min(p.y for p in drawn), max(p.y for p in drawn)
    extent = max(xmax - xmin, ymax - ymin)
    if extent == 0.0:
        extent = 1.0
    pad = extent * spec.margin_fraction
    x0, x1 = xmin - pad, xmax + pad
    y0, y1 = ymin - pad, ymax + pad
    stroke = 0.003 * extent

    svg = ET.Element(
        "svg",
        {
            "xmlns": "http://www.w3.org/2000/svg",
            "version": "1.1",
            "width": str(spec.width_px),
            "height": str(spec.height_px),
            # Flipped y: the group below maps math-up to screen-down.
            "viewBox": f"{_fmt(x0)} {_fmt(-y1)} {_fmt(x1 - x0)} {_fmt(y1 - y0)}",
            "preserveAspectRatio": "xMidYMid meet",
        },
    )
    g = ET.SubElement(svg, "g", {"transform": "scale(1,-1)", "fill": "none", "stroke-width": _fmt(stroke)})

    if spec.show_rays:
        for s in result.valid_samples:
            far = max((s.q_inner, s.q_outer, s.p), key=lambda q: (q - focus).norm())
            ET.SubElement(
                g,
                "line",
                {"class": "ray", "stroke": "#bbbbbb", "x1": _fmt(focus.x), "y1": _fmt(focus.y), "x2": _fmt(far.x), "y2": _fmt(far.y)},
            )
    if spec.show_base:
        for run in base:
            ET.SubElement(g, "polyline", {"class": "base", "stroke": "#000000", "points": _points_attr(run)})
    for cls, colour, runs in (("inner", "#1f77b4", inner), ("outer", "#d62728", outer)):
        for run in runs:
            ET.SubElement(g, "polyline", {"class": cls, "stroke": colour, "points": _points_attr(run)})
    if spec.show_focus:
        marker = ET.SubElement(g, "g", {"class": "focus", "stroke": "#000000"})
        a = 0.015 * extent
        for dx, dy in ((a, a), (a, -a)):
            ET.SubElement(
                marker,
                "line",
                {"x1": _fmt(focus.x - dx), "y1": _fmt(focus.y - dy), "x2": _fmt(focus.x + dx), "y2": _fmt(focus.y + dy)},
            )
    ET.indent(svg)
    return '<?xml version="1.0" encoding="UTF-8"?>\n' + ET.tostring(svg, encoding="unicode") + "\n"


def _num(x: float):
    # Strict JSON has no NaN/Infinity, so those travel as strings.
    if math.isfinite(x):
        return x
    return "nan" if math.isnan(x) else ("inf" if x > 0 else "-inf")


def _pair(v) -> list[float] | None:
    x, y = _xy(v)
    return None if x is None else [x, y]


def _curve_json(curve) -> dict:
    if isinstance(curve, LineSegmentCurve):
        return {"kind": "line", "n": _pair(curve.n), "s": _pair(curve.s)}
    if isinstance(curve, CircularArcCurve):
        return {"kind": "arc", "center": _pair(curve.c), "radius": curve.r, "theta_n": curve.theta_n, "theta_s": curve.theta_s}
    if isinstance(curve, ParametricCurve):
        return {"kind": "parametric", "arclen_subdivisions": curve.arclen_subdivisions}
    raise GpcError(f"unsupported curve type {type(curve).__name__}")


def result_to_dict(result: GpcResult) -> dict:
    cfg = result.config
    return {
        "schema_version": SCHEMA_VERSION,
        "config": {
            "focus": _pair(cfg.focus),
            "curve": _curve_json(cfg.curve),
            "offset": render(cfg.offset),
            "m": cfg.m,
            "drop_nonfinite": cfg.drop_nonfinite,
        },
        "samples": [
            {
                "k": s.k,
                "p": _pair(s.p),
                "l": _num(s.l),
                "d": _num(s.d),
                "u": _pair(s.u),
                "q_inner": _pair(s.q_inner),
                "q_outer": _pair(s.q_outer),
                "valid": s.valid,
                "reason": s.reason,
            }
            for s in result.samples
        ],
        "dropped": result.dropped,
    }


def write_json(result: GpcResult) -> str:
    return json.dumps(result_to_dict(result), indent=2, allow_nan=False) + "\n"


def _curve_from_json(obj: dict):
    kind = obj["kind"]
    if kind == "line":
        return LineSegmentCurve(Point2(*obj["n"]), Point2(*obj["s"]))
    if kind == "arc":
        return CircularArcCurve(Point2(*obj["center"]), obj["radius"], obj["theta_n"], obj["theta_s"])
    raise GpcError(f"curve kind {kind!r} cannot be rebuilt from JSON")


def read_json(text: str) -> GpcResult:
    """Inverse of write_json for line and arc base curves."""
    obj = json.loads(text)
    if obj.get("schema_version") != SCHEMA_VERSION:
        raise GpcError(f"unsupported schema_version {obj.get('schema_version')!r}")
    c = obj["config"]
    config = GpcConfig(
        focus=Point2(*c["focus"]),
        curve=_curve_from_json(c["curve"]),
        offset=parse(c["offset"]),
        m=c["m"],
        drop_nonfinite=c["drop_nonfinite"],
    )

    def point(v):
        return None if v is None else Point2(*v)

    samples = tuple(
        GpcSample(
            k=s["k"],
            p=Point2(*s["p"]),
            l=float(s["l"]),
            d=float(s["d"]),
            u=None if s["u"] is None else Vec2(*s["u"]),
            q_inner=point(s["q_inner"]),
            q_outer=point(s["q_outer"]),
            valid=s["valid"],
            reason=s["reason"],
        )
        for s in obj["samples"]
    )
    return GpcResult(config, samples, obj["dropped"])
