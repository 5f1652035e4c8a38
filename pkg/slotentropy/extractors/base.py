"""
Base extractor class.
All construction extractors inherit from this base class.
"""

from abc import ABC, abstractmethod
from dataclasses import dataclass
from enum import Enum
from typing import ClassVar, Optional

from slotentropy.config import (
    DEFAULT_ADJECTIVAL_DEPRELS,
    DEFAULT_CASE_DEPRELS,
    DEFAULT_COMPOUND_DEPRELS,
    DEFAULT_PHRASAL_DEPRELS,
    DEFAULT_POSSESSIVE_TAGS,
    DEFAULT_RELATIVIZERS,
    PipelineConfig,
)
from slotentropy.data.lexicon import PARTICIPLE_TAG, CorpusLexicon
from slotentropy.data.models import Sentence, Token
from slotentropy.query import CompiledQuery, MatchSpan, compile_query, parse_query


class ConstructionKind(str, Enum):
    """The four constructions; values are the names used in output files."""

    PASSIVE = "passive"
    REDUCED_RELATIVE = "reduced_relative"
    NVN = "nvn"
    HYPHENATED = "hyphenated"

    @property
    def display_name(self) -> str:
        return {
            "passive": "Passive",
            "reduced_relative": "ReducedRelative",
            "nvn": "NVN",
            "hyphenated": "Hyphenated",
        }[self.value]

    @property
    def is_phrasal(self) -> bool:
        return self in (ConstructionKind.PASSIVE, ConstructionKind.REDUCED_RELATIVE)


# Baseline (Hyphenated) first; this order is used for every table and model
KIND_ORDER = (
    ConstructionKind.HYPHENATED,
    ConstructionKind.NVN,
    ConstructionKind.PASSIVE,
    ConstructionKind.REDUCED_RELATIVE,
)


class SpanStatus(str, Enum):
    VALID = "parsed_valid"
    FILTERED = "rejected_by_filter"
    DEPENDENCY = "rejected_by_dependency"


@dataclass(frozen=True, slots=True)
class ConstructionMatch:
    """One attested (participle, alpha, head noun, construction) tuple."""

    kind: ConstructionKind
    participle_lemma: str
    alpha_lemma: str
    alpha_form: str
    head_noun_lemma: Optional[str]
    preposition: Optional[str]
    sentence_id: str
    participle_index: int
    alpha_index: Optional[int]


@dataclass(frozen=True, slots=True)
class SpanOutcome:
    """How one query span was resolved."""

    kind: ConstructionKind
    participle: str
    status: SpanStatus
    match: Optional[ConstructionMatch] = None


@dataclass(frozen=True)
class ExtractionRules:
    """Label sets and switches shared by all extractors."""

    compound_deprels: frozenset[str] = DEFAULT_COMPOUND_DEPRELS
    adjectival_deprels: frozenset[str] = DEFAULT_ADJECTIVAL_DEPRELS
    phrasal_deprels: frozenset[str] = DEFAULT_PHRASAL_DEPRELS
    case_deprels: frozenset[str] = DEFAULT_CASE_DEPRELS
    possessive_tags: frozenset[str] = DEFAULT_POSSESSIVE_TAGS
    relativizers: frozenset[str] = DEFAULT_RELATIVIZERS
    rr_allow_adverb: bool = False
    hyphen_noun_lexicon: bool = False

    @classmethod
    def from_config(cls, config: PipelineConfig) -> "ExtractionRules":
        return cls(
            compound_deprels=frozenset(config.compound_deprels),
            adjectival_deprels=frozenset(config.adjectival_deprels),
            phrasal_deprels=frozenset(config.phrasal_deprels),
            case_deprels=frozenset(config.case_deprels),
            possessive_tags=frozenset(config.possessive_tags),
            relativizers=frozenset(r.lower() for r in config.relativizers),
            rr_allow_adverb=config.rr_allow_adverb,
            hyphen_noun_lexicon=config.hyphen_noun_lexicon,
        )


DEFAULT_RULES = ExtractionRules()


def quote_value(pattern: str) -> str:
    """Quote a regex for use as a query value."""
    return '"' + pattern.replace('"', '\\"') + '"'


class BaseExtractor(ABC):
    """
    Abstract base class for construction extractors.

    Subclasses must implement:
    - build_query(): CQL text for the participle
    - resolve(): turn one query span into a SpanOutcome
    """

    kind: ClassVar[ConstructionKind]

    def __init__(
        self,
        participle: str,
        rules: ExtractionRules = DEFAULT_RULES,
        lexicon: Optional[CorpusLexicon] = None,
    ):
        self.participle = participle
        self.rules = rules
        self.lexicon = lexicon
        text = self.build_query()
        self.query: Optional[CompiledQuery] = compile_query(parse_query(text)) if text else None

    @abstractmethod
    def build_query(self) -> Optional[str]:
        """Query text, or None when nothing can match (e.g. no known forms)."""

    @abstractmethod
    def resolve(self, span: MatchSpan, sentence: Sentence) -> SpanOutcome:
        """Validate a span and build its match."""

    def participle_test(self) -> str:
        from re import escape

        return f'tag="{PARTICIPLE_TAG}" & lemma={quote_value(escape(self.participle))}'

    def outcomes(self, sentence: Sentence) -> list[SpanOutcome]:
        """One outcome per query span, in span order."""
        if self.query is None:
            return []
        return [self.resolve(span, sentence) for span in self.query.scan(sentence)]

    def extract(self, sentence: Sentence) -> list[ConstructionMatch]:
        return [o.match for o in self.outcomes(sentence) if o.status is SpanStatus.VALID]

    def _reject(self, status: SpanStatus) -> SpanOutcome:
        return SpanOutcome(kind=self.kind, participle=self.participle, status=status)

    def _accept(
        self,
        sentence: Sentence,
        participle_index: int,
        alpha: Optional[Token],
        head_noun: Optional[Token],
        preposition: Optional[Token] = None,
        alpha_form: Optional[str] = None,
        alpha_lemma: Optional[str] = None,
    ) -> SpanOutcome:
        match = ConstructionMatch(
            kind=self.kind,
            participle_lemma=self.participle,
            alpha_lemma=alpha_lemma if alpha_lemma is not None else alpha.lemma,
            alpha_form=alpha_form if alpha_form is not None else alpha.form,
            head_noun_lemma=head_noun.lemma if head_noun is not None else None,
            preposition=preposition.form if preposition is not None else None,
            sentence_id=sentence.id,
            participle_index=participle_index,
            alpha_index=alpha.index if alpha is not None else None,
        )
        return SpanOutcome(kind=self.kind, participle=self.participle, status=SpanStatus.VALID, match=match)

    @classmethod
    def get_info(cls) -> dict:
        """
        Get extractor metadata.

        Returns:
            Dict with keys: name, display_name, description
        """
        return {
            "name": cls.kind.value,
            "display_name": cls.kind.display_name,
            "description": (cls.__doc__ or "").strip(),
        }
