"""
Stats package.
Mixed-model fitting, likelihood-ratio and permutation tests.
"""

from slotentropy.stats.analysis import CONTRASTS, analyze, contrast_name, summarize_constructions, to_long_rows
from slotentropy.stats.inference import (
    LrtResult,
    PermutationResult,
    chi2_sf,
    format_p,
    lrt,
    permutation_test,
)
from slotentropy.stats.lmm import DEFAULT_LEVELS, LmmFit, LongRow, fit_lmm, profiled_loglik

__all__ = [
    "CONTRASTS",
    "DEFAULT_LEVELS",
    "LmmFit",
    "LongRow",
    "LrtResult",
    "PermutationResult",
    "analyze",
    "chi2_sf",
    "contrast_name",
    "fit_lmm",
    "format_p",
    "lrt",
    "permutation_test",
    "profiled_loglik",
    "summarize_constructions",
    "to_long_rows",
]
