"""Executable checks of the inequalities: sharpness, weighted bounds, functional bounds, Monte Carlo."""

from .families import GENERATORS, TestFamily, generate, union
from .functional import KINDS, functional_inequality_check, laplacian_desk_check, vt_homogeneity, vt_of_constant
from .montecarlo import QUANTITIES, mc_cross_check, replicate
from .radialization import radialization_check
from .report import ATTAINED, BOUNDED, CONVERGING, VERDICTS, VIOLATED, VerificationReport
from .sharpness import apply_op, rayleigh_quotient, sharpness_study
from .weighted import (DIRECTIONS, balance_defect, balanced_alpha, weighted_constants,
                       weighted_inequality_check)

__all__ = [
    "ATTAINED", "BOUNDED", "CONVERGING", "DIRECTIONS", "GENERATORS", "KINDS", "QUANTITIES", "VERDICTS", "VIOLATED",
    "TestFamily", "VerificationReport", "apply_op", "balance_defect", "balanced_alpha", "functional_inequality_check",
    "generate", "laplacian_desk_check", "mc_cross_check", "radialization_check", "rayleigh_quotient", "replicate",
    "sharpness_study", "union", "vt_homogeneity", "vt_of_constant", "weighted_constants",
    "weighted_inequality_check",
]
