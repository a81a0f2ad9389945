"""Directed finite base curves.

Every curve maps a traversal fraction ``k`` in [0, 1] to a point and to the
arc length measured from its start point N.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Union

import numpy as np

from .errors import DegenerateCurve, NonFiniteCurve, ParamOutOfRange
from .geometry import Point2


def _check_k(k: float) -> float:
    if not (0.0 <= k <= 1.0):
        raise ParamOutOfRange(f"traversal fraction k={k} outside [0, 1]")
    return k


@dataclass(frozen=True)
class LineSegmentCurve:
    n: Point2
    s: Point2

    kind = "line"

    def __post_init__(self):
        if self.n == self.s:
            raise DegenerateCurve(f"line segment collapses to the point {self.n.as_tuple()}")

    @property
    def length(self) -> float:
        return (self.s - self.n).norm()

    def point_at(self, k: float) -> Point2:
        _check_k(k)
        return Point2(self.n.x + (self.s.x - self.n.x) * k, self.n.y + (self.s.y - self.n.y) * k)

    def arc_length_at(self, k: float) -> float:
        _check_k(k)
        return k * self.length


@dataclass(frozen=True)
class CircularArcCurve:
    c: Point2
    r: float
    theta_n: float
    theta_s: float

    kind = "arc"

    def __post_init__(self):
        if not (math.isfinite(self.r) and self.r > 0):
            raise DegenerateCurve(f"radius must be positive and finite, got {self.r}")
        if not (math.isfinite(self.theta_n) and math.isfinite(self.theta_s)):
            raise DegenerateCurve("arc angles must be finite")
        if self.theta_n == self.theta_s:
            raise DegenerateCurve("arc start and end angles coincide")

    @property
    def length(self) -> float:
        # Signed; traversal direction lives in the angle interpolation.
        return self.r * (self.theta_s - self.theta_n)

    def angle_at(self, k: float) -> float:
        return self.theta_n + (self.theta_s - self.theta_n) * k

    def point_at(self, k: float) -> Point2:
        _check_k(k)
        theta = self.angle_at(k)
        return Point2(self.c.x + self.r * math.cos(theta), self.c.y + self.r * math.sin(theta))

    def arc_length_at(self, k: float) -> float:
        _check_k(k)
        return abs(self.length) * k


@dataclass(frozen=True)
class ParametricCurve:
    """A caller-supplied smooth curve ``position(t)``, t in [0, 1].

    Arc length comes from composite Simpson quadrature of the speed
    ``|dp/dt|`` over ``arclen_subdivisions`` uniform panels, with the
    derivative taken by central differences of step ``1/(8*arclen_subdivisions)``.
    """

    position: Callable[[float], Point2]
    arclen_subdivisions: int = 1024

    kind = "parametric"

    def __post_init__(self):
        if self.arclen_subdivisions < 16:
            raise DegenerateCurve("arclen_subdivisions must be at least 16")

    def point_at(self, k: float) -> Point2:
        _check_k(k)
        return self._probe(k)

    def _probe(self, t: float) -> Point2:
        try:
            p = self.position(t)
            if not isinstance(p, Point2):
                p = Point2(*p)
        except (ValueError, ArithmeticError) as exc:
            raise NonFiniteCurve(f"position({t}) failed: {exc}") from exc
        return p

    def _speed(self, t: float) -> float:
        h = 1.0 / (8 * self.arclen_subdivisions)
        # Shift the stencil inward at the ends so only [0, 1] is probed.
        if t - h < 0.0:
            a, b, c = self._probe(t), self._probe(t + h), self._probe(t + 2 * h)
            dx = (-3 * a.x + 4 * b.x - c.x) / (2 * h)
            dy = (-3 * a.y + 4 * b.y - c.y) / (2 * h)
        elif t + h > 1.0:
            a, b, c = self._probe(t), self._probe(t - h), self._probe(t - 2 * h)
            dx = (3 * a.x - 4 * b.x + c.x) / (2 * h)
            dy = (3 * a.y - 4 * b.y + c.y) / (2 * h)
        else:
            lo, hi = self._probe(t - h), self._probe(t + h)
            dx = (hi.x - lo.x) / (2 * h)
            dy = (hi.y - lo.y) / (2 * h)
        v = math.hypot(dx, dy)
        if not math.isfinite(v):
            raise NonFiniteCurve(f"non-finite speed at t={t}")
        return v

    @cached_property
    def _cumulative(self) -> np.ndarray:
        """Cumulative Simpson arc length at the even nodes ``t = 2j/N``."""
        n = self.arclen_subdivisions + (self.arclen_subdivisions % 2)
        speeds = np.array([self._speed(j / n) for j in range(n + 1)])
        h = 1.0 / n
        pairs = (h / 3.0) * (speeds[0:-1:2] + 4.0 * speeds[1::2] + speeds[2::2])
        return np.concatenate(([0.0], np.cumsum(pairs)))

    def arc_length_at(self, k: float) -> float:
        _check_k(k)
        cum = self._cumulative
        npairs = len(cum) - 1
        if k == 1.0:
            return float(cum[-1])
        j = min(int(k * npairs), npairs - 1)
        a = j / npairs
        if k == a:
            return float(cum[j])
        b = k
        partial = (b - a) / 6.0 * (self._speed(a) + 4.0 * self._speed(0.5 * (a + b)) + self._speed(b))
        # Clamp into the enclosing panel pair so the result stays monotone.
        return float(min(max(cum[j] + partial, cum[j]), cum[j + 1]))

    @property
    def length(self) -> float:
        return float(self._cumulative[-1])


BaseCurve = Union[LineSegmentCurve, CircularArcCurve, ParametricCurve]


def line_point_at(curve: LineSegmentCurve, k: float) -> Point2:
    return curve.point_at(k)


def line_arc_length(curve: LineSegmentCurve, k: float) -> float:
    return curve.arc_length_at(k)


def arc_point_at(curve: CircularArcCurve, k: float) -> Point2:
    return curve.point_at(k)


def arc_length_at(curve: CircularArcCurve, k: float) -> float:
    return curve.arc_length_at(k)


def numeric_arc_length(curve: ParametricCurve, k: float) -> float:
    return curve.arc_length_at(k)


def as_parametric(curve: LineSegmentCurve | CircularArcCurve, subdivisions: int = 1024) -> ParametricCurve:
    """Wrap an analytic curve so its arc length is computed numerically instead."""
    return ParametricCurve(curve.point_at, subdivisions)
