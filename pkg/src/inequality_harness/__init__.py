"""Both sides of the rearrangement inequalities, with verdicts and margins."""

from src.inequality_harness.hardy_littlewood import (
    equality_gap,
    equality_holds,
    hardy_littlewood_check,
    hl_equality_residual,
    nested_levels_check,
    pairing,
    symmetrized_pair,
)
from src.inequality_harness.kernel import DEFAULT_KERNEL, MollifierKernel, limit_factor
from src.inequality_harness.mollified import (
    EPSILON_SEQUENCE,
    convergence_order,
    mollified_couple_check,
    mollified_gradient_form,
    mollified_laplacian,
)
from src.inequality_harness.polya_szego import (
    nonlinear_ps_check,
    ps_couple_check,
    schwarz_couple_check,
    weak_form_check,
    weighted_ps_check,
)
from src.inequality_harness.report import GREATER_EQUAL, LESS_EQUAL, VerificationReport
from src.inequality_harness.riesz import riesz_check, riesz_slice_check, triple_sum
from src.inequality_harness.tolerance import DEFAULT_TOLERANCES, Tolerances

__all__ = [
    "DEFAULT_KERNEL",
    "DEFAULT_TOLERANCES",
    "EPSILON_SEQUENCE",
    "GREATER_EQUAL",
    "LESS_EQUAL",
    "MollifierKernel",
    "Tolerances",
    "VerificationReport",
    "convergence_order",
    "equality_gap",
    "equality_holds",
    "hardy_littlewood_check",
    "hl_equality_residual",
    "limit_factor",
    "mollified_couple_check",
    "mollified_gradient_form",
    "mollified_laplacian",
    "nested_levels_check",
    "nonlinear_ps_check",
    "pairing",
    "ps_couple_check",
    "riesz_check",
    "riesz_slice_check",
    "schwarz_couple_check",
    "symmetrized_pair",
    "triple_sum",
    "weak_form_check",
    "weighted_ps_check",
]
