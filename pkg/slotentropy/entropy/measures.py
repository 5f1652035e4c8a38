"""
Entropy measures.
Plug-in Shannon entropy of the alpha slot, in bits.
"""

import math
from dataclasses import dataclass
from typing import Mapping, Union

import numpy as np
from scipy import stats

from slotentropy.entropy.sampling import SlotSample
from slotentropy.errors import DomainError
from slotentropy.extractors.base import ConstructionKind


@dataclass(frozen=True, slots=True)
class EntropyRecord:
    participle: str
    kind: ConstructionKind
    n: int
    entropy_bits: float


def max_entropy(n: int) -> float:
    """log2(n): entropy of n equiprobable outcomes."""
    if n < 1:
        raise DomainError(f"max_entropy needs n >= 1, got {n}")
    return math.log2(n)


def entropy(sample: Union[SlotSample, Mapping[str, int]]) -> float:
    """
    H = -sum p log2 p over the observed alpha keys.

    Raises:
        DomainError: empty sample or negative counts
    """
    counts_map = sample.alphas if isinstance(sample, SlotSample) else sample
    counts = np.array([c for c in counts_map.values() if c != 0], dtype=np.int64)
    if counts.size == 0:
        raise DomainError("entropy of an empty sample is undefined")
    if (counts < 0).any():
        raise DomainError("counts must be non-negative")

    k = counts.size
    if k == 1:
        return 0.0
    if (counts == counts[0]).all():
        return math.log2(k)
    bits = float(stats.entropy(counts, base=2))
    return min(max(bits, 0.0), math.log2(int(counts.sum())))


def entropy_record(sample: SlotSample) -> EntropyRecord:
    return EntropyRecord(
        participle=sample.participle,
        kind=sample.kind,
        n=sample.total,
        entropy_bits=entropy(sample),
    )
