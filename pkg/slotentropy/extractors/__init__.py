"""
Extractors package.
Registry of the construction extractors, keyed by construction kind.
"""

from typing import Iterable, Optional

from slotentropy.data.lexicon import CorpusLexicon
from slotentropy.data.models import Sentence
from slotentropy.extractors.base import (
    DEFAULT_RULES,
    KIND_ORDER,
    BaseExtractor,
    ConstructionKind,
    ConstructionMatch,
    ExtractionRules,
    SpanOutcome,
    SpanStatus,
)
from slotentropy.extractors.compound import HyphenatedExtractor, NVNExtractor
from slotentropy.extractors.dependency import Candidate, dependency_validate
from slotentropy.extractors.phrasal import PassiveExtractor, ReducedRelativeExtractor


EXTRACTORS: dict[ConstructionKind, type[BaseExtractor]] = {
    ConstructionKind.HYPHENATED: HyphenatedExtractor,
    ConstructionKind.NVN: NVNExtractor,
    ConstructionKind.PASSIVE: PassiveExtractor,
    ConstructionKind.REDUCED_RELATIVE: ReducedRelativeExtractor,
}


def get_extractor_class(kind: ConstructionKind | str) -> type[BaseExtractor] | None:
    """Get extractor class by construction kind."""
    try:
        return EXTRACTORS.get(ConstructionKind(kind))
    except ValueError:
        return None


def get_all_extractors() -> list[dict]:
    """Get metadata for all registered extractors."""
    return [EXTRACTORS[kind].get_info() for kind in KIND_ORDER]


def build_extractors(
    participle: str,
    rules: ExtractionRules = DEFAULT_RULES,
    lexicon: Optional[CorpusLexicon] = None,
) -> list[BaseExtractor]:
    """One extractor per construction for a participle, in KIND_ORDER."""
    return [EXTRACTORS[kind](participle, rules=rules, lexicon=lexicon) for kind in KIND_ORDER]


def extract_passive(s: Sentence, participle: str, rules: ExtractionRules = DEFAULT_RULES) -> list[ConstructionMatch]:
    return PassiveExtractor(participle, rules=rules).extract(s)


def extract_reduced_relative(
    s: Sentence, participle: str, rules: ExtractionRules = DEFAULT_RULES
) -> list[ConstructionMatch]:
    return ReducedRelativeExtractor(participle, rules=rules).extract(s)


def extract_nvn(s: Sentence, participle: str, rules: ExtractionRules = DEFAULT_RULES) -> list[ConstructionMatch]:
    return NVNExtractor(participle, rules=rules).extract(s)


def extract_hyphenated(
    s: Sentence,
    participle: str,
    participle_forms: Optional[Iterable[str]] = None,
    rules: ExtractionRules = DEFAULT_RULES,
    lexicon: Optional[CorpusLexicon] = None,
) -> list[ConstructionMatch]:
    """
    Hyphenated compounds of a participle in one sentence.

    Surface forms come from participle_forms, else from the lexicon, else
    from tokens of the sentence itself tagged as that participle.
    """
    if lexicon is None:
        if participle_forms is None:
            lexicon = CorpusLexicon(possessive_tags=rules.possessive_tags).observe_all([s])
        else:
            lexicon = CorpusLexicon.from_forms({participle: participle_forms})
    return HyphenatedExtractor(participle, rules=rules, lexicon=lexicon).extract(s)


__all__ = [
    "EXTRACTORS",
    "KIND_ORDER",
    "BaseExtractor",
    "Candidate",
    "ConstructionKind",
    "ConstructionMatch",
    "ExtractionRules",
    "HyphenatedExtractor",
    "NVNExtractor",
    "PassiveExtractor",
    "ReducedRelativeExtractor",
    "SpanOutcome",
    "SpanStatus",
    "build_extractors",
    "dependency_validate",
    "extract_hyphenated",
    "extract_nvn",
    "extract_passive",
    "extract_reduced_relative",
    "get_all_extractors",
    "get_extractor_class",
]
