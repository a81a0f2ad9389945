"""Planar points, displacement vectors and the two focal formulas."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DegenerateRay, GpcError, NonFiniteOffset

# Relative tolerance below which a base point is treated as sitting on the focus.
DEGENERACY_TOL = 1e-12


@dataclass(frozen=True)
class Vec2:
    dx: float
    dy: float

    def __post_init__(self):
        if not (math.isfinite(self.dx) and math.isfinite(self.dy)):
            raise GpcError(f"non-finite vector ({self.dx}, {self.dy})")

    def __add__(self, other: Vec2) -> Vec2:
        return Vec2(self.dx + other.dx, self.dy + other.dy)

    def __sub__(self, other: Vec2) -> Vec2:
        return Vec2(self.dx - other.dx, self.dy - other.dy)

    def __mul__(self, s: float) -> Vec2:
        return Vec2(self.dx * s, self.dy * s)

    __rmul__ = __mul__

    def __neg__(self) -> Vec2:
        return Vec2(-self.dx, -self.dy)

    def norm(self) -> float:
        return math.hypot(self.dx, self.dy)

    def dot(self, other: Vec2) -> float:
        return self.dx * other.dx + self.dy * other.dy

    def cross(self, other: Vec2) -> float:
        """z-component of the 3D cross product."""
        return self.dx * other.dy - self.dy * other.dx


@dataclass(frozen=True)
class Point2:
    x: float
    y: float

    def __post_init__(self):
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise GpcError(f"non-finite point ({self.x}, {self.y})")

    def __sub__(self, other: Point2) -> Vec2:
        return Vec2(self.x - other.x, self.y - other.y)

    def __add__(self, v: Vec2) -> Point2:
        return Point2(self.x + v.dx, self.y + v.dy)

    def translate(self, v: Vec2, scale: float = 1.0) -> Point2:
        return Point2(self.x + scale * v.dx, self.y + scale * v.dy)

    def norm(self) -> float:
        """Distance from the origin."""
        return math.hypot(self.x, self.y)

    def as_tuple(self) -> tuple[float, float]:
        return (self.x, self.y)


def midpoint(a: Point2, b: Point2) -> Point2:
    return Point2(0.5 * (a.x + b.x), 0.5 * (a.y + b.y))


def unit_from_focus(o: Point2, p: Point2) -> Vec2:
    """Unit vector pointing from the focus ``o`` towards ``p``.

    Raises DegenerateRay when ``p`` sits on ``o`` (relative tolerance 1e-12).
    """
    v = p - o
    n = v.norm()
    if n <= DEGENERACY_TOL * max(1.0, p.norm(), o.norm()):
        raise DegenerateRay(f"point {p.as_tuple()} coincides with focus {o.as_tuple()}")
    return Vec2(v.dx / n, v.dy / n)


def branch_points(p: Point2, u: Vec2, d: float) -> tuple[Point2, Point2]:
    """Inner and outer branch points ``p - d*u`` and ``p + d*u``.

    A negative ``d`` is accepted and simply swaps which side each point lands on.
    """
    if not math.isfinite(d):
        raise NonFiniteOffset(f"offset distance {d} is not finite")
    q_inner = Point2(p.x - d * u.dx, p.y - d * u.dy)
    q_outer = Point2(p.x + d * u.dx, p.y + d * u.dy)
    return q_inner, q_outer
