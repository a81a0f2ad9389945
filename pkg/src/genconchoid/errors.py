"""Exception hierarchy shared by the construction, parser and CLI."""

from __future__ import annotations


class GpcError(ValueError):
    """Base class for every error raised by genconchoid."""


class DegenerateRay(GpcError):
    """The base-curve point coincides with the focus, so no ray direction exists."""


class NonFiniteOffset(GpcError):
    """The offset distance is NaN or infinite."""


class ParamOutOfRange(GpcError):
    """A traversal fraction k lies outside [0, 1]."""


class DegenerateCurve(GpcError):
    """A base curve was built from parameters that describe no curve."""


class NonFiniteCurve(GpcError):
    """A parametric base curve produced a non-finite point."""


class AllSamplesInvalid(GpcError):
    """No sample of the construction survived."""


class UnknownPreset(GpcError):
    """A preset name is not in the registry."""


class ExprSyntaxError(GpcError):
    """Malformed offset expression.

    ``position`` is the 0-based character offset where parsing failed.
    """

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.message = message
        self.position = position


class UnknownIdentifier(ExprSyntaxError):
    """An identifier outside the expression language's vocabulary."""

    def __init__(self, name: str, position: int):
        super().__init__(f"unknown identifier {name!r}", position)
        self.name = name
