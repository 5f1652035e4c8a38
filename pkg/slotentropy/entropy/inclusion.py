"""
Inclusion thresholds.
A participle enters the analysis only if every construction cell has
enough raw and enough validated tokens.
"""

from typing import Mapping, Union

from slotentropy.entropy.sampling import CellKey, SlotSample
from slotentropy.extractors.base import KIND_ORDER


INSUFFICIENT_RAW = "insufficient raw tokens"
INSUFFICIENT_PARSED = "insufficient parsed tokens"

CellCounts = Mapping[CellKey, Union[int, SlotSample]]


def _count(cells: CellCounts, key: CellKey) -> int:
    value = cells.get(key, 0)
    return value.total if isinstance(value, SlotSample) else int(value)


def _participles(*maps: CellCounts) -> list[str]:
    return sorted({participle for cells in maps for participle, _ in cells})


def exclusion_reasons(
    raw_counts: CellCounts,
    parsed_samples: CellCounts,
    min_raw: int = 200,
    min_parsed: int = 100,
) -> dict[str, list[str]]:
    """
    Excluded participles by reason.

    A participle failing both thresholds is listed under both reasons.
    """
    reasons: dict[str, list[str]] = {INSUFFICIENT_RAW: [], INSUFFICIENT_PARSED: []}
    for participle in _participles(raw_counts, parsed_samples):
        if any(_count(raw_counts, (participle, kind)) < min_raw for kind in KIND_ORDER):
            reasons[INSUFFICIENT_RAW].append(participle)
        if any(_count(parsed_samples, (participle, kind)) < min_parsed for kind in KIND_ORDER):
            reasons[INSUFFICIENT_PARSED].append(participle)
    return reasons


def apply_inclusion(
    raw_counts: CellCounts,
    parsed_samples: CellCounts,
    min_raw: int = 200,
    min_parsed: int = 100,
) -> set[str]:
    """
    Participles meeting both thresholds in all four constructions.

    Args:
        raw_counts: Raw query-span counts per (participle, kind)
        parsed_samples: Validated samples (or their totals) per (participle, kind)
        min_raw: Minimum raw tokens per construction (inclusive)
        min_parsed: Minimum validated tokens per construction (inclusive)

    Returns:
        Set of included participle lemmas
    """
    excluded = set().union(*exclusion_reasons(raw_counts, parsed_samples, min_raw, min_parsed).values())
    return set(_participles(raw_counts, parsed_samples)) - excluded
