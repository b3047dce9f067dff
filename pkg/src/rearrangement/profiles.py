"""Step profiles on the measure axis and radial profiles on ``[0, R]``."""

import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
import pandas as pd
from scipy.integrate import cumulative_trapezoid

from src.common.errors import ProfileError
from src.common.types import FloatArray, as_float_array

FLOAT_FORMAT = "%.17g"


def unit_ball_measure(n: int) -> float:
    """Lebesgue measure of the unit ball in dimension ``n``."""
    return math.pi ** (n / 2) / math.gamma(n / 2 + 1)


def derivative_window(total: float, cell: float) -> float:
    """Measure window used by every difference quotient on a profile."""
    return max(4.0 * cell, total * 1e-3)


@dataclass(frozen=True, eq=False)
class StepProfile:
    """Nonincreasing step function, ``values[k]`` on ``[breakpoints[k], breakpoints[k+1])``.

    An empty profile (no steps, total measure 0) stands for an empty slice.
    """

    breakpoints: FloatArray = field(repr=False)
    values: FloatArray = field(repr=False)

    def __post_init__(self) -> None:
        bp = as_float_array(self.breakpoints, "breakpoints")
        vals = as_float_array(self.values, "values")
        if bp.ndim != 1 or vals.ndim != 1 or bp.size != vals.size + 1:
            raise ProfileError("malformed profile", "need one more breakpoint than values")
        if bp[0] != 0.0 or np.any(np.diff(bp) <= 0):
            raise ProfileError("malformed profile", "breakpoints must start at 0 and increase")
        if np.any(np.diff(vals) > 0):
            raise ProfileError("malformed profile", "values must be nonincreasing")
        if vals.size and vals[-1] < 0:
            raise ProfileError("malformed profile", "values must be nonnegative")
        object.__setattr__(self, "breakpoints", bp)
        object.__setattr__(self, "values", vals)

    @classmethod
    def from_samples(cls, samples: FloatArray, cell: float) -> "StepProfile":
        """Sort cell values downward, each cell a step of width ``cell``; equal runs merge."""
        ordered = np.sort(np.asarray(samples, dtype=float))[::-1]
        if ordered.size == 0:
            return cls(np.zeros(1), np.zeros(0))
        starts = np.concatenate([[0], np.flatnonzero(np.diff(ordered) != 0) + 1])
        ends = np.concatenate([starts[1:], [ordered.size]])
        return cls(np.concatenate([[0], ends]) * cell, ordered[starts])

    @classmethod
    def from_function(cls, fn, total: float, steps: int) -> "StepProfile":
        """Sample a nonincreasing ``fn(s)`` at the midpoints of ``steps`` equal steps."""
        bp = np.linspace(0.0, total, steps + 1)
        return cls(bp, np.asarray(fn(0.5 * (bp[:-1] + bp[1:])), dtype=float))

    @property
    def total(self) -> float:
        return float(self.breakpoints[-1])

    @property
    def widths(self) -> FloatArray:
        return np.diff(self.breakpoints)

    def __len__(self) -> int:
        return int(self.values.size)

    def __call__(self, s: FloatArray | float) -> FloatArray:
        """Right-continuous evaluation; zero at and beyond the total measure."""
        s = np.asarray(s, dtype=float)
        if self.values.size == 0:
            return np.zeros_like(s)
        k = np.searchsorted(self.breakpoints, s, side="right") - 1
        out = self.values[np.clip(k, 0, self.values.size - 1)]
        return np.where((s >= 0) & (s < self.total), out, 0.0)

    def distribution(self, t: float) -> float:
        """Measure of ``{profile > t}``."""
        return float(np.sum(self.widths[self.values > t]))

    def cumulative(self) -> FloatArray:
        return np.concatenate([[0.0], np.cumsum(self.values * self.widths)])

    def integral_to(self, s: FloatArray | float) -> FloatArray:
        """Exact ``int_0^s`` of the profile, vectorised, ``s`` clipped to the axis."""
        s = np.clip(np.asarray(s, dtype=float), 0.0, self.total)
        if self.values.size == 0:
            return np.zeros_like(s)
        k = np.clip(np.searchsorted(self.breakpoints, s, side="right") - 1, 0, self.values.size - 1)
        return self.cumulative()[k] + self.values[k] * (s - self.breakpoints[k])

    def block_average(self, a: FloatArray, b: FloatArray) -> FloatArray:
        a = np.asarray(a, dtype=float)
        b = np.asarray(b, dtype=float)
        return (self.integral_to(b) - self.integral_to(a)) / (b - a)

    def power_integral(self, p: float) -> float:
        return float(np.sum(self.values**p * self.widths))

    def mapped(self, fn) -> "StepProfile":
        """Apply a nondecreasing ``fn`` to the values; equal neighbours merge."""
        return _merged(self.breakpoints, np.asarray(fn(self.values), dtype=float))

    def to_csv(self, path: Path) -> None:
        """Two columns ``s_k, v_k`` (left breakpoint and value), plus the closing ``total, 0``."""
        table = pd.DataFrame(
            {"s": self.breakpoints, "value": np.concatenate([self.values, [0.0]])}
        )
        table.to_csv(path, index=False, float_format=FLOAT_FORMAT)


def _merged(breakpoints: FloatArray, values: FloatArray) -> StepProfile:
    if values.size == 0:
        return StepProfile(breakpoints[:1], values)
    keep = np.concatenate([[True], np.diff(values) != 0])
    return StepProfile(np.concatenate([breakpoints[:-1][keep], breakpoints[-1:]]), values[keep])


def concentration(p: StepProfile, s: float) -> float:
    """``int_0^s p``, exact for a step profile."""
    slack = 1e-12 * max(p.total, 1.0)
    if s < -slack or s > p.total + slack:
        raise ProfileError("measure out of range", f"s={s} not in [0, {p.total}]")
    return float(p.integral_to(s))


def product_integral(p: StepProfile, q: StepProfile) -> float:
    """``int p q`` over the common refinement of both breakpoint sets."""
    end = min(p.total, q.total)
    edges = np.union1d(p.breakpoints, q.breakpoints)
    edges = edges[edges <= end]
    if edges.size < 2:
        return 0.0
    mids = 0.5 * (edges[:-1] + edges[1:])
    return float(np.sum(p(mids) * q(mids) * np.diff(edges)))


def profile_slope(p: StepProfile, s: FloatArray | float, window: FloatArray | float) -> FloatArray:
    """Windowed difference quotient of ``p`` at ``s`` (nonpositive for a profile).

    The quotient compares averages over ``[s - window, s]`` and ``[s, s + window]``,
    with ``s`` held at least one window away from both ends of the axis.
    """
    total = p.total
    window = np.minimum(window, total / 2)
    s = np.clip(np.asarray(s, dtype=float), window, total - window)
    lower = p.block_average(s - window, s)
    upper = p.block_average(s, s + window)
    return (upper - lower) / window


def shell_window(s: FloatArray | float, n: int, h: float, total: float) -> FloatArray:
    """Window at ``s`` no narrower than one grid shell around the ball of measure ``s``.

    Cells of a radial function that tie on the lattice fill such a shell, so
    a narrower window sees ``u*`` flat inside a tie class.
    """
    s = np.maximum(np.asarray(s, dtype=float), 0.0)
    shell = n * unit_ball_measure(n) ** (1.0 / n) * s ** (1.0 - 1.0 / n) * h
    return np.maximum(derivative_window(total, h**n), shell)


def measure_slope(p: StepProfile, s: FloatArray | float, n: int, h: float) -> FloatArray:
    """``p'(s)`` over shell windows of a grid with spacing ``h`` in dimension ``n``."""
    return profile_slope(p, s, shell_window(s, n, h, p.total))


@dataclass(frozen=True, eq=False)
class RadialProfile:
    """Values of a radial function at equally spaced radii on ``[0, R]``."""

    n: int
    radii: FloatArray = field(repr=False)
    values: FloatArray = field(repr=False)

    def __post_init__(self) -> None:
        radii = as_float_array(self.radii, "radii")
        values = as_float_array(self.values, "values")
        if radii.shape != values.shape or radii.ndim != 1 or radii.size < 2:
            raise ProfileError("malformed radial profile")
        if self.n < 1:
            raise ProfileError("malformed radial profile", f"n={self.n}")
        object.__setattr__(self, "radii", radii)
        object.__setattr__(self, "values", values)

    @property
    def radius(self) -> float:
        return float(self.radii[-1])

    def __call__(self, r: FloatArray | float) -> FloatArray:
        return np.interp(r, self.radii, self.values, right=0.0)

    def ball_integral(self) -> FloatArray:
        """``int_{B_r} f`` at every node, trapezoid rule in ``r``."""
        weight = self.n * unit_ball_measure(self.n) * self.radii ** (self.n - 1)
        return cumulative_trapezoid(self.values * weight, self.radii, initial=0.0)

    def to_csv(self, path: Path) -> None:
        table = pd.DataFrame({"r": self.radii, "value": self.values})
        table.to_csv(path, index=False, float_format=FLOAT_FORMAT)


def radial_nodes(radius: float, count: int = 1024) -> FloatArray:
    return np.linspace(0.0, radius, count)


def radial_profile_of(p: StepProfile, n: int, count: int = 1024) -> RadialProfile:
    """``r -> p(omega_n r^n)`` on ``count`` nodes covering the ball of measure ``p.total``."""
    omega = unit_ball_measure(n)
    radius = (p.total / omega) ** (1.0 / n)
    radii = radial_nodes(radius, count)
    return RadialProfile(n, radii, p(omega * radii**n))


def radial_slope(
    p: StepProfile, n: int, radii: FloatArray, window: FloatArray | float
) -> FloatArray:
    """``|d/dr p(omega_n r^n)|`` through the windowed measure-axis slope."""
    omega = unit_ball_measure(n)
    s = omega * np.asarray(radii, dtype=float) ** n
    return n * omega * np.asarray(radii) ** (n - 1) * np.abs(profile_slope(p, s, window))


def shell_slope(p: StepProfile, n: int, radii: FloatArray, h: float) -> FloatArray:
    """``radial_slope`` with every window widened to a shell of thickness ``h``."""
    s = unit_ball_measure(n) * np.asarray(radii, dtype=float) ** n
    return radial_slope(p, n, radii, shell_window(s, n, h, p.total))
