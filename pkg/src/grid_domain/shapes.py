"""Shape specifications that decide which grid cells are active."""

import math
from dataclasses import dataclass, field
from typing import Protocol, runtime_checkable

import numpy as np

from src.common.errors import ConfigError
from src.common.types import BoolArray, FloatArray


@runtime_checkable
class Shape(Protocol):
    """Anything that can classify points (rows of an ``(k, dim)`` array)."""

    def contains(self, points: FloatArray) -> BoolArray: ...


@dataclass(frozen=True)
class Rectangle:
    lower: tuple[float, ...]
    upper: tuple[float, ...]

    def contains(self, points: FloatArray) -> BoolArray:
        lo = np.asarray(self.lower)
        hi = np.asarray(self.upper)
        return np.all((points > lo) & (points < hi), axis=1)


@dataclass(frozen=True)
class Disk:
    center: tuple[float, ...]
    radius: float

    def contains(self, points: FloatArray) -> BoolArray:
        r = np.linalg.norm(points - np.asarray(self.center), axis=1)
        return r < self.radius


@dataclass(frozen=True)
class Annulus:
    center: tuple[float, float]
    inner: float
    outer: float

    def contains(self, points: FloatArray) -> BoolArray:
        r = np.linalg.norm(points - np.asarray(self.center), axis=1)
        return (r > self.inner) & (r < self.outer)


@dataclass(frozen=True)
class LShape:
    """The square ``(0, size)^2`` minus its upper-right quarter."""

    size: float = 1.0

    def contains(self, points: FloatArray) -> BoolArray:
        x, y = points[:, 0], points[:, 1]
        inside = (x > 0) & (x < self.size) & (y > 0) & (y < self.size)
        half = self.size / 2
        return inside & ~((x > half) & (y > half))


@dataclass(frozen=True)
class Polygon:
    vertices: tuple[tuple[float, float], ...]

    def contains(self, points: FloatArray) -> BoolArray:
        # even-odd ray casting, vectorised over points
        x, y = points[:, 0], points[:, 1]
        inside = np.zeros(len(points), dtype=bool)
        verts = np.asarray(self.vertices, dtype=float)
        for (x0, y0), (x1, y1) in zip(verts, np.roll(verts, -1, axis=0)):
            crosses = (y0 > y) != (y1 > y)
            with np.errstate(divide="ignore", invalid="ignore"):
                x_cross = x0 + (y - y0) * (x1 - x0) / (y1 - y0)
            inside ^= crosses & (x < x_cross)
        return inside


@dataclass(frozen=True)
class ExplicitMask:
    mask: BoolArray = field(compare=False)

    def contains(self, points: FloatArray) -> BoolArray:
        raise TypeError("an explicit mask is applied directly, not by point tests")


def tilted_rectangle(
    center: tuple[float, float], length: float, width: float, angle: float
) -> Polygon:
    """Rectangle rotated by ``angle`` radians about its center."""
    c, s = math.cos(angle), math.sin(angle)
    half = [(-length / 2, -width / 2), (length / 2, -width / 2),
            (length / 2, width / 2), (-length / 2, width / 2)]
    verts = tuple((center[0] + c * a - s * b, center[1] + s * a + c * b) for a, b in half)
    return Polygon(verts)


def _floats(tokens: list[str], spec: str) -> list[float]:
    try:
        return [float(t) for t in tokens]
    except ValueError:
        raise ConfigError("bad shape spec", spec) from None


def parse_shape(spec: str) -> tuple[Shape, tuple[tuple[float, float], ...]]:
    """Parse a whitespace-separated shape spec into a shape and its bounding box.

    Recognised forms::

        interval a b
        rectangle x0 x1 y0 y1
        disk cx cy r              (disk r is centered at the origin)
        annulus cx cy r0 r1
        lshape [size]
        tilted cx cy length width angle_degrees
        polygon x1 y1 x2 y2 ...
    """
    tokens = spec.split()
    if not tokens:
        raise ConfigError("bad shape spec", "empty")
    kind, args = tokens[0].lower(), _floats(tokens[1:], spec)
    if kind == "interval" and len(args) == 2:
        return Rectangle((args[0],), (args[1],)), ((args[0], args[1]),)
    if kind == "rectangle" and len(args) == 4:
        x0, x1, y0, y1 = args
        return Rectangle((x0, y0), (x1, y1)), ((x0, x1), (y0, y1))
    if kind == "disk" and len(args) in (1, 3):
        cx, cy, r = (0.0, 0.0, args[0]) if len(args) == 1 else args
        return Disk((cx, cy), r), ((cx - r, cx + r), (cy - r, cy + r))
    if kind == "annulus" and len(args) == 4:
        cx, cy, r0, r1 = args
        return Annulus((cx, cy), r0, r1), ((cx - r1, cx + r1), (cy - r1, cy + r1))
    if kind == "lshape" and len(args) <= 1:
        size = args[0] if args else 1.0
        return LShape(size), ((0.0, size), (0.0, size))
    if kind == "tilted" and len(args) == 5:
        cx, cy, length, width, degrees = args
        poly = tilted_rectangle((cx, cy), length, width, math.radians(degrees))
        return poly, _bbox(poly.vertices)
    if kind == "polygon" and len(args) >= 6 and len(args) % 2 == 0:
        verts = tuple(zip(args[0::2], args[1::2]))
        return Polygon(verts), _bbox(verts)
    raise ConfigError("bad shape spec", spec)


def _bbox(verts: tuple[tuple[float, float], ...]) -> tuple[tuple[float, float], ...]:
    xs = [v[0] for v in verts]
    ys = [v[1] for v in verts]
    return (min(xs), max(xs)), (min(ys), max(ys))
