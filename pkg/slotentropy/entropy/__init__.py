"""
Entropy package.
Cell sampling, inclusion thresholds and slot entropy.
"""

from slotentropy.entropy.inclusion import (
    INSUFFICIENT_PARSED,
    INSUFFICIENT_RAW,
    apply_inclusion,
    exclusion_reasons,
)
from slotentropy.entropy.measures import EntropyRecord, entropy, entropy_record, max_entropy
from slotentropy.entropy.sampling import CellKey, SlotSample, collect, derive_rng, downsample

__all__ = [
    "INSUFFICIENT_PARSED",
    "INSUFFICIENT_RAW",
    "CellKey",
    "EntropyRecord",
    "SlotSample",
    "apply_inclusion",
    "collect",
    "derive_rng",
    "downsample",
    "entropy",
    "entropy_record",
    "exclusion_reasons",
    "max_entropy",
]
