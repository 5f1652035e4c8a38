"""
Statistical analysis.
Runs the full set of model fits and tests on per-cell entropies and
collects them into a StatsReport.
"""

from typing import Iterable, Union

from loguru import logger

from slotentropy.entropy.measures import EntropyRecord
from slotentropy.extractors.base import ConstructionKind
from slotentropy.report.schemas import (
    ConstructionSummary,
    LrtSummary,
    ModelSummary,
    PermutationSummary,
    StatsReport,
)
from slotentropy.stats.inference import lrt, permutation_test
from slotentropy.stats.lmm import DEFAULT_LEVELS, LongRow, fit_lmm, rows_to_frame


BASELINE = ConstructionKind.HYPHENATED.value
PHRASAL_LEVELS = (ConstructionKind.PASSIVE.value, ConstructionKind.REDUCED_RELATIVE.value)
CONTRASTS = tuple((level, BASELINE) for level in DEFAULT_LEVELS[1:]) + (PHRASAL_LEVELS,)


def contrast_name(contrast: tuple[str, str]) -> str:
    return f"{contrast[0]}_vs_{contrast[1]}"


def to_long_rows(records: Iterable[Union[EntropyRecord, LongRow]]) -> list[LongRow]:
    rows = []
    for record in records:
        if isinstance(record, LongRow):
            rows.append(record)
        else:
            rows.append(LongRow(record.participle, ConstructionKind(record.kind).value, record.entropy_bits))
    return rows


def summarize_constructions(rows: list[LongRow]) -> dict[str, ConstructionSummary]:
    """n, mean, sd, min and max entropy per construction, baseline first."""
    frame = rows_to_frame(rows)
    summary = {}
    for level in DEFAULT_LEVELS:
        values = frame.loc[frame["construction"] == level, "entropy_bits"]
        if values.empty:
            continue
        summary[level] = ConstructionSummary(
            n=int(values.size),
            mean=float(values.mean()),
            sd=float(values.std(ddof=1)) if values.size > 1 else None,
            min=float(values.min()),
            max=float(values.max()),
        )
    return summary


def analyze(
    records: Iterable[Union[EntropyRecord, LongRow]],
    n_perm: int = 10000,
    seed: int = 0,
) -> StatsReport:
    """
    Fit the construction model and run every comparison.

    Args:
        records: One entropy value per (participle, construction)
        n_perm: Permutations per contrast
        seed: Master seed for the permutation tests

    Returns:
        StatsReport; model fields are empty when fewer than 2 participles
        are available
    """
    rows = to_long_rows(records)
    n_participles = len({row.participle for row in rows})
    report = StatsReport(summary=summarize_constructions(rows), n_participles=n_participles)

    if n_participles < 2:
        logger.warning(f"Only {n_participles} participle(s) included; skipping model fitting")
        report.skipped_reason = f"need at least 2 participles, got {n_participles}"
        return report

    logger.info(f"Fitting mixed model on {len(rows)} rows from {n_participles} participles")
    full = fit_lmm(rows, include_construction=True, levels=DEFAULT_LEVELS)
    reduced = fit_lmm(rows, include_construction=False, levels=DEFAULT_LEVELS)
    report.model = ModelSummary(**full.to_dict())
    report.reduced_model = ModelSummary(**reduced.to_dict())
    report.lrt_construction = LrtSummary(**lrt(full, reduced, df=len(DEFAULT_LEVELS) - 1).to_dict())

    phrasal_rows = [row for row in rows if row.construction in PHRASAL_LEVELS]
    phrasal_full = fit_lmm(phrasal_rows, include_construction=True, levels=PHRASAL_LEVELS)
    phrasal_reduced = fit_lmm(phrasal_rows, include_construction=False, levels=PHRASAL_LEVELS)
    report.lrt_phrasal_only = LrtSummary(**lrt(phrasal_full, phrasal_reduced, df=1).to_dict())

    for contrast in CONTRASTS:
        result = permutation_test(rows, contrast, n_perm=n_perm, seed=seed)
        report.permutation[contrast_name(contrast)] = PermutationSummary(**result.to_dict())

    logger.info(
        f"Construction LRT chi2({report.lrt_construction.df})={report.lrt_construction.chi2:.4f}, "
        f"phrasal-only chi2(1)={report.lrt_phrasal_only.chi2:.4f}"
    )
    return report

