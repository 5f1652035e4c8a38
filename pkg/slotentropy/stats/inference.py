"""
Model comparison and significance.
Likelihood-ratio tests between nested ML fits, chi-square tail
probabilities, and a within-participle sign-flip permutation test.
"""

from dataclasses import dataclass
from hashlib import blake2b
from typing import Sequence

import numpy as np
from loguru import logger
from scipy import special

from slotentropy.errors import DesignError, DomainError, FitQualityError
from slotentropy.extractors.base import ConstructionKind
from slotentropy.stats.lmm import LmmFit, LongRow, rows_to_frame


LOGLIK_TOLERANCE = 1e-6


@dataclass(frozen=True, slots=True)
class LrtResult:
    chi2: float
    df: int
    p: float

    def to_dict(self) -> dict:
        return {"chi2": self.chi2, "df": self.df, "p": self.p}


@dataclass(frozen=True, slots=True)
class PermutationResult:
    contrast: tuple[str, str]
    statistic: float
    p: float
    n_groups: int
    n_perm: int

    def to_dict(self) -> dict:
        return {
            "contrast": list(self.contrast),
            "statistic": self.statistic,
            "p": self.p,
            "n_groups": self.n_groups,
            "n_perm": self.n_perm,
        }


def chi2_sf(x: float, df: int) -> float:
    """Upper tail of the chi-square distribution, Q(df/2, x/2)."""
    if x < 0 or np.isnan(x):
        raise DomainError(f"chi2_sf needs x >= 0, got {x}")
    if df < 1:
        raise DomainError(f"chi2_sf needs df >= 1, got {df}")
    if x == 0:
        return 1.0
    return float(min(max(special.gammaincc(df / 2.0, x / 2.0), 0.0), 1.0))


def lrt(full: LmmFit, reduced: LmmFit, df: int) -> LrtResult:
    """
    Likelihood-ratio test of nested ML fits.

    Raises:
        FitQualityError: the full model's loglik is below the reduced one
            by more than the optimizer tolerance
    """
    diff = full.loglik - reduced.loglik
    if diff < -LOGLIK_TOLERANCE:
        raise FitQualityError(
            f"full model loglik {full.loglik:.6f} is below reduced model loglik {reduced.loglik:.6f}"
        )
    chi2 = max(2.0 * diff, 0.0)
    return LrtResult(chi2=chi2, df=df, p=chi2_sf(chi2, df))


def format_p(p: float) -> str:
    """APA-style p value: '< .0001', '.0032', '.88'."""
    if p < 1e-4:
        return "< .0001"
    text = f"{p:.4f}" if p < 0.01 else f"{p:.2f}"
    return text[1:] if text.startswith("0") else text


def _contrast_rng(seed: int, contrast: tuple[str, str]) -> np.random.Generator:
    digest = blake2b("\t".join(contrast).encode("utf-8"), digest_size=8).digest()
    return np.random.default_rng(np.random.SeedSequence([seed, int.from_bytes(digest, "big")]))


def permutation_test(
    rows: Sequence[LongRow],
    contrast: tuple[str, str],
    n_perm: int = 10000,
    seed: int = 0,
) -> PermutationResult:
    """
    Within-participle permutation test of a two-level contrast.

    Swapping the two labels inside a group flips the sign of that group's
    difference, so the null distribution is drawn as random sign vectors.

    Args:
        rows: Long-format entropy rows
        contrast: (level_a, level_b); the statistic is mean(a - b)
        n_perm: Number of permutations
        seed: Master seed

    Returns:
        PermutationResult with add-one p value

    Raises:
        DesignError: no group carries both levels
    """
    level_a, level_b = (ConstructionKind(level).value for level in contrast)
    frame = rows_to_frame(rows)
    wide = frame.pivot_table(index="participle", columns="construction", values="entropy_bits", aggfunc="mean")
    for level in (level_a, level_b):
        if level not in wide.columns:
            wide[level] = np.nan

    complete = wide[[level_a, level_b]].dropna()
    dropped = sorted(set(wide.index) - set(complete.index))
    if dropped:
        logger.warning(f"Permutation {level_a} vs {level_b}: dropped {len(dropped)} group(s) missing a level: {dropped}")
    if complete.empty:
        raise DesignError(f"no participle has both {level_a} and {level_b}")

    diffs = (complete[level_a] - complete[level_b]).to_numpy(dtype=float)
    observed = float(diffs.mean())

    rng = _contrast_rng(seed, (level_a, level_b))
    signs = rng.choice(np.array([-1.0, 1.0]), size=(n_perm, diffs.size))
    permuted = signs @ diffs / diffs.size
    hits = int(np.count_nonzero(np.abs(permuted) >= abs(observed) - 1e-12))
    p = (1 + hits) / (1 + n_perm)

    return PermutationResult(
        contrast=(level_a, level_b),
        statistic=observed,
        p=p,
        n_groups=int(diffs.size),
        n_perm=n_perm,
    )
