"""
Slot samples.
Groups construction matches into (participle, construction) cells and
draws the fixed-size random samples the entropy comparison runs on.
"""

from collections import Counter
from dataclasses import dataclass, field
from hashlib import blake2b
from typing import Iterable, Literal

import numpy as np
from loguru import logger

from slotentropy.errors import InsufficientSampleError
from slotentropy.extractors.base import ConstructionKind, ConstructionMatch


CellKey = tuple[str, ConstructionKind]


@dataclass
class SlotSample:
    """Multiset of alpha keys observed in one cell."""

    participle: str
    kind: ConstructionKind
    alphas: Counter = field(default_factory=Counter)

    @property
    def total(self) -> int:
        return sum(self.alphas.values())

    @property
    def key(self) -> CellKey:
        return self.participle, self.kind

    def instances(self) -> list[str]:
        """Expanded token instances, ordered by alpha key."""
        return [alpha for alpha in sorted(self.alphas) for _ in range(self.alphas[alpha])]


def alpha_key(match: ConstructionMatch, key: Literal["lemma", "form"] = "lemma", lowercase: bool = True) -> str:
    value = match.alpha_lemma if key == "lemma" and match.alpha_lemma else match.alpha_form
    return value.lower() if lowercase else value


def collect(
    matches: Iterable[ConstructionMatch],
    key: Literal["lemma", "form"] = "lemma",
    lowercase: bool = True,
) -> dict[CellKey, SlotSample]:
    """
    Group matches by (participle, construction).

    Args:
        matches: Valid construction matches
        key: Count alphas by lemma or by surface form
        lowercase: Case-fold the alpha key

    Returns:
        Dict of SlotSample per cell, in first-seen order
    """
    samples: dict[CellKey, SlotSample] = {}
    for match in matches:
        cell = (match.participle_lemma, match.kind)
        if cell not in samples:
            samples[cell] = SlotSample(participle=match.participle_lemma, kind=match.kind)
        samples[cell].alphas[alpha_key(match, key, lowercase)] += 1
    return samples


def cell_seed(seed: int, participle: str, kind: ConstructionKind) -> np.random.SeedSequence:
    """Seed stream for one cell; independent of processing order."""
    digest = blake2b(f"{participle}\t{ConstructionKind(kind).value}".encode("utf-8"), digest_size=8).digest()
    return np.random.SeedSequence([seed, int.from_bytes(digest, "big")])


def derive_rng(seed: int, participle: str, kind: ConstructionKind) -> np.random.Generator:
    return np.random.default_rng(cell_seed(seed, participle, kind))


def downsample(sample: SlotSample, n: int = 100, seed: int = 0) -> SlotSample:
    """
    Uniform sample of n token instances without replacement.

    Raises:
        InsufficientSampleError: sample.total < n
    """
    total = sample.total
    if total < n:
        raise InsufficientSampleError(
            f"cell ({sample.participle}, {sample.kind.value}) has {total} tokens, {n} required"
        )
    instances = sample.instances()
    if total == n:
        return SlotSample(sample.participle, sample.kind, Counter(instances))

    rng = derive_rng(seed, sample.participle, sample.kind)
    order = rng.permutation(total)[:n]
    drawn = Counter(instances[i] for i in order)
    logger.debug(f"Sampled {n}/{total} tokens for ({sample.participle}, {sample.kind.value})")
    return SlotSample(sample.participle, sample.kind, drawn)
