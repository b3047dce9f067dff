"""Discretization tolerance model shared by every check.

The inequalities are exact in the continuum; on the grid each side carries a
first-order error from masked boundaries and difference quotients, so every
tolerance scales with ``h``.
"""

from dataclasses import dataclass


@dataclass(frozen=True)
class Tolerances:
    c1: float = 8.0
    c2: float = 8.0
    c3: float = 8.0
    hl_relative: float = 1e-12
    hl_equality: float = 1e-8
    c_riesz: float = 4.0
    riesz_cap: int = 4096

    def gradient_pair(self, h: float, lip_u: float, lip_w: float, measure: float) -> float:
        """``c1 h Lip(u) Lip(w) |Omega|`` for Dirichlet-type pairings."""
        return self.c1 * h * lip_u * lip_w * measure

    def row_measure(self, h: float, measure: float) -> float:
        """``c2 h |row|`` for concentration comparisons."""
        return self.c2 * h * measure

    def pointwise(self, h: float, scale: float) -> float:
        """``c3 h max f`` for node-wise comparisons."""
        return self.c3 * h * scale

    def jump_pairing(self, h: float, terms: float) -> float:
        """``c_riesz h`` times the summed ``TV(f) sup|g * k|`` terms of a direct Riesz sum."""
        return self.c_riesz * h * terms

    def hl(self, lhs: float, rhs: float) -> float:
        return self.hl_relative * max(abs(lhs), abs(rhs))


DEFAULT_TOLERANCES = Tolerances()
