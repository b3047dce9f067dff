"""Deterministic test functions named by short spec strings.

Function specs: ``cone``, ``plane(a,b,c)``, ``tent-sum(k)``, ``bump``,
``indicator(<shape spec>)``, ``random-lipschitz(L)``, ``constant(c)``, ``zero``.

Profile specs turn ``u*`` into the ``W`` of an extremal pair: ``u*``,
``square``, ``scale(c)``, ``truncate(d)``, ``min(c)``, ``zero``.
"""

import re
from collections.abc import Callable

import numpy as np

from src.common.errors import ConfigError
from src.common.types import FloatArray
from src.grid_domain import GridFunction, MaskedGrid, parse_shape
from src.rearrangement import StepProfile, truncate_profile

BUMP_WIDTH = 0.15
LIPSCHITZ_CONES = 4

_SPEC = re.compile(r"^\s*([a-z*-]+)\s*(?:\((.*)\))?\s*$")


def _split_spec(spec: str) -> tuple[str, list[str]]:
    match = _SPEC.match(spec)
    if match is None:
        raise ConfigError("bad function spec", spec)
    name, args = match.groups()
    return name, [] if args is None or not args.strip() else [a.strip() for a in args.split(",")]


def _floats(args: list[str], count: int, spec: str) -> list[float]:
    if len(args) != count:
        raise ConfigError("bad function spec", f"{spec}: expected {count} arguments")
    try:
        return [float(a) for a in args]
    except ValueError as exc:
        raise ConfigError("bad function spec", spec) from exc


def box_center(grid: MaskedGrid) -> FloatArray:
    return np.array([o + e * grid.h / 2 for o, e in zip(grid.origin, grid.extents)])


def _distance(points: FloatArray, center: FloatArray) -> FloatArray:
    return np.linalg.norm(points - center, axis=1)


def _random_centers(grid: MaskedGrid, rng: np.random.Generator, count: int) -> FloatArray:
    return grid.centers[rng.integers(0, grid.n_active, count)]


def gen_fixture(spec: str, grid: MaskedGrid, seed: int = 0) -> GridFunction:
    """Evaluate the named function at the active cell centers of ``grid``."""
    name, args = _split_spec(spec)
    x = grid.centers
    center = box_center(grid)
    rng = np.random.default_rng(seed)
    if name == "cone" and not args:
        values = np.maximum(1.0 - _distance(x, center), 0.0)
    elif name == "plane":
        coeffs = _floats(args, grid.dim + 1, spec)
        values = np.maximum(x @ np.array(coeffs[:-1]) + coeffs[-1], 0.0)
    elif name == "bump" and not args:
        values = np.exp(-(_distance(x, center) ** 2) / (2 * BUMP_WIDTH**2))
    elif name == "tent-sum":
        (k,) = _floats(args, 1, spec)
        centers = _random_centers(grid, rng, int(k))
        heights = rng.uniform(0.5, 1.0, int(k))
        radii = rng.uniform(0.2, 0.5, int(k))
        values = np.zeros(grid.n_active)
        for c, height, radius in zip(centers, heights, radii):
            values += height * np.maximum(1.0 - _distance(x, c) / radius, 0.0)
    elif name == "random-lipschitz":
        (lip,) = _floats(args, 1, spec)
        centers = _random_centers(grid, rng, LIPSCHITZ_CONES)
        radii = rng.uniform(0.2, 0.6, LIPSCHITZ_CONES)
        slope = lip / LIPSCHITZ_CONES
        values = np.zeros(grid.n_active)
        for c, radius in zip(centers, radii):
            values += slope * np.maximum(radius - _distance(x, c), 0.0)
    elif name == "indicator":
        shape, _ = parse_shape(",".join(args).replace(",", " "))
        values = shape.contains(x).astype(float)
    elif name == "constant":
        (c,) = _floats(args, 1, spec)
        values = np.full(grid.n_active, c)
    elif name == "zero" and not args:
        values = np.zeros(grid.n_active)
    else:
        raise ConfigError("bad function spec", spec)
    return GridFunction(grid, values)


def profile_transform(spec: str) -> Callable[[StepProfile], StepProfile]:
    """Map ``u*`` to the profile ``W`` named by ``spec``."""
    name, args = _split_spec(spec)
    if name == "u*" and not args:
        return lambda ustar: ustar
    if name == "square" and not args:
        return lambda ustar: ustar.mapped(np.square)
    if name == "scale":
        (c,) = _floats(args, 1, spec)
        return lambda ustar: ustar.mapped(lambda v: c * v)
    if name == "truncate":
        (delta,) = _floats(args, 1, spec)
        return lambda ustar: truncate_profile(ustar, delta)
    if name == "min":
        (c,) = _floats(args, 1, spec)
        return lambda ustar: ustar.mapped(lambda v: np.minimum(v, c))
    if name == "zero" and not args:
        return lambda ustar: ustar.mapped(np.zeros_like)
    raise ConfigError("bad function spec", spec)
