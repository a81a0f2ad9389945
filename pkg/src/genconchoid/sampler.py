"""Sampling a generalized planar conchoid.

A base curve is traversed at ``m`` uniform fractions ``k = i/(m-1)``. At each
base point ``p`` the offset ``d = f(l)`` is evaluated at the arc length ``l``
from the curve's start, and ``p`` is pushed ``d`` along the focal ray in both
directions, giving one inner-branch and one outer-branch point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .curves import BaseCurve
from .errors import AllSamplesInvalid, DegenerateRay, GpcError
from .expr import OffsetExpr, evaluate, parse
from .geometry import Point2, Vec2, branch_points, unit_from_focus

REASON_NONFINITE = "non-finite offset"
REASON_DEGENERATE = "degenerate ray"


@dataclass(frozen=True)
class GpcConfig:
    """Inputs of one construction.

    With ``drop_nonfinite=False`` an unusable sample aborts the run
    (NonFiniteOffset or DegenerateRay) instead of being marked invalid.
    """

    focus: Point2
    curve: BaseCurve
    offset: OffsetExpr
    m: int = 180
    drop_nonfinite: bool = True

    def __post_init__(self):
        if isinstance(self.offset, str):
            object.__setattr__(self, "offset", parse(self.offset))
        if not isinstance(self.m, int) or self.m < 2:
            raise GpcError(f"sample count m must be an integer >= 2, got {self.m!r}")


@dataclass(frozen=True)
class GpcSample:
    k: float
    p: Point2
    l: float
    d: float
    u: Vec2 | None
    q_inner: Point2 | None
    q_outer: Point2 | None
    valid: bool
    reason: str | None = None


@dataclass(frozen=True)
class GpcResult:
    config: GpcConfig
    samples: tuple[GpcSample, ...]
    dropped: int

    @property
    def valid_samples(self) -> list[GpcSample]:
        return [s for s in self.samples if s.valid]

    @property
    def start(self) -> Point2:
        """The base curve's start point N."""
        return self.config.curve.point_at(0.0)


def sample_grid(m: int) -> list[float]:
    # Endpoint-inclusive: k runs from exactly 0 to exactly 1.
    return [i / (m - 1) for i in range(m)]


def _sample(config: GpcConfig, k: float) -> GpcSample:
    p = config.curve.point_at(k)
    l = config.curve.arc_length_at(k)
    d = evaluate(config.offset, l)
    strict = not config.drop_nonfinite
    try:
        u = unit_from_focus(config.focus, p)
    except DegenerateRay:
        if strict:
            raise
        return GpcSample(k, p, l, d, None, None, None, False, REASON_DEGENERATE)
    if not math.isfinite(d):
        if strict:
            branch_points(p, u, d)  # raises NonFiniteOffset
        return GpcSample(k, p, l, d, u, None, None, False, REASON_NONFINITE)
    q_inner, q_outer = branch_points(p, u, d)
    return GpcSample(k, p, l, d, u, q_inner, q_outer, True)


def sample_gpc(config: GpcConfig) -> GpcResult:
    samples = tuple(_sample(config, k) for k in sample_grid(config.m))
    dropped = sum(not s.valid for s in samples)
    if dropped == len(samples):
        raise AllSamplesInvalid(f"all {len(samples)} samples are invalid")
    return GpcResult(config, samples, dropped)


def _split_runs(result: GpcResult) -> list[list[GpcSample]]:
    runs: list[list[GpcSample]] = []
    current: list[GpcSample] = []
    for s in result.samples:
        if s.valid:
            current.append(s)
        elif current:
            runs.append(current)
            current = []
    if current:
        runs.append(current)
    if not runs:
        raise AllSamplesInvalid("result holds no valid sample")
    return runs


def branch_polylines(
    result: GpcResult,
) -> tuple[list[list[Point2]], list[list[Point2]], list[list[Point2]]]:
    """Inner, outer and base polylines built from the valid samples.

    Each is a list of sub-polylines; an invalid sample ends one sub-polyline
    and the next valid sample starts another, so singularities are never bridged.
    """
    runs = _split_runs(result)
    inner = [[s.q_inner for s in run] for run in runs]
    outer = [[s.q_outer for s in run] for run in runs]
    base = [[s.p for s in run] for run in runs]
    return inner, outer, base
