"""
Phrasal construction extractors.
Passive ("was stained with tears") and reduced relative
("pillow stained with tears"): alpha sits inside a prepositional phrase
dependent on the participle.
"""

from typing import Optional

from slotentropy.data.models import Sentence, Token
from slotentropy.data.tags import is_nominal
from slotentropy.extractors.base import BaseExtractor, ConstructionKind, SpanOutcome, SpanStatus
from slotentropy.extractors.dependency import Candidate, dependency_validate
from slotentropy.query import MatchSpan


def non_possessive_noun_test(possessive_tags) -> str:
    exclusions = "".join(f' & tag!="{tag}"' for tag in sorted(possessive_tags))
    return f'tag="N.*"{exclusions}'


class _PhrasalExtractor(BaseExtractor):
    """Shared alpha search for the two phrasal constructions."""

    def find_alpha(
        self, sentence: Sentence, participle_index: int, preposition_index: int, head_noun: Optional[Token]
    ) -> Optional[Token]:
        """First nominal right of the preposition whose attachment validates."""
        for token in sentence.tokens[preposition_index:]:
            if not is_nominal(token.xpos, self.rules.possessive_tags):
                continue
            candidate = Candidate(
                participle_index=participle_index,
                alpha_index=token.index,
                head_noun_index=head_noun.index if head_noun is not None else None,
                preposition_index=preposition_index,
            )
            if dependency_validate(candidate, sentence, self.kind, self.rules):
                return token
        return None

    def _resolve_phrase(
        self, sentence: Sentence, participle_index: int, preposition_index: int, head_noun: Optional[Token]
    ) -> SpanOutcome:
        alpha = self.find_alpha(sentence, participle_index, preposition_index, head_noun)
        if alpha is None:
            return self._reject(SpanStatus.DEPENDENCY)
        return self._accept(
            sentence,
            participle_index=participle_index,
            alpha=alpha,
            head_noun=head_noun,
            preposition=sentence.token(preposition_index),
        )


class PassiveExtractor(_PhrasalExtractor):
    """BE verb, optional adverb, participle, preposition: "was stained with tears"."""

    kind = ConstructionKind.PASSIVE

    # pattern positions in the query
    BE, ADVERB, PARTICIPLE, PREPOSITION = range(4)

    def build_query(self) -> str:
        return f'[tag="VB.*"] [tag="RB"]? [{self.participle_test()}] [tag="IN"] within <s/>'

    def resolve(self, span: MatchSpan, sentence: Sentence) -> SpanOutcome:
        be_index = span.token_for(self.BE)
        before = sentence.token(be_index - 1) if be_index > 1 else None

        # "which/that was stained with" is a full relative clause
        if before is not None and before.lemma.lower() in self.rules.relativizers:
            return self._reject(SpanStatus.FILTERED)

        head_noun = before if before is not None and is_nominal(before.xpos, self.rules.possessive_tags) else None
        return self._resolve_phrase(
            sentence,
            participle_index=span.token_for(self.PARTICIPLE),
            preposition_index=span.token_for(self.PREPOSITION),
            head_noun=head_noun,
        )


class ReducedRelativeExtractor(_PhrasalExtractor):
    """Non-possessive noun, participle, preposition: "pillow stained with tears"."""

    kind = ConstructionKind.REDUCED_RELATIVE

    def build_query(self) -> str:
        noun = f"[{non_possessive_noun_test(self.rules.possessive_tags)}]"
        adverb = ' [tag="RB"]?' if self.rules.rr_allow_adverb else ""
        return f'{noun}{adverb} [{self.participle_test()}] [tag="IN"] within <s/>'

    def resolve(self, span: MatchSpan, sentence: Sentence) -> SpanOutcome:
        offset = 1 if self.rules.rr_allow_adverb else 0
        return self._resolve_phrase(
            sentence,
            participle_index=span.token_for(1 + offset),
            preposition_index=span.token_for(2 + offset),
            head_noun=sentence.token(span.token_for(0)),
        )
