"""Generalized planar conchoids: offset a directed base curve along the rays
from a focus by a distance that is a function of arc length."""

from .curves import (
    CircularArcCurve,
    LineSegmentCurve,
    ParametricCurve,
    arc_length_at,
    arc_point_at,
    as_parametric,
    line_arc_length,
    line_point_at,
    numeric_arc_length,
)
from .errors import (
    AllSamplesInvalid,
    DegenerateCurve,
    DegenerateRay,
    ExprSyntaxError,
    GpcError,
    NonFiniteCurve,
    NonFiniteOffset,
    ParamOutOfRange,
    UnknownIdentifier,
    UnknownPreset,
)
from .expr import evaluate, parse, render
from .geometry import Point2, Vec2, branch_points, unit_from_focus
from .output import PlotSpec, TableSpec, read_json, write_csv, write_json, write_svg
from .sampler import GpcConfig, GpcResult, GpcSample, branch_polylines, sample_gpc

__version__ = "0.1.0"
