"""
Compound construction extractors.
NVN ("tear stained pillow") and hyphenated ("tear-stained pillow").
"""

import re
from typing import Optional

from slotentropy.data.lexicon import split_hyphenated
from slotentropy.data.models import Sentence
from slotentropy.data.tags import is_nominal
from slotentropy.extractors.base import BaseExtractor, ConstructionKind, SpanOutcome, SpanStatus, quote_value
from slotentropy.extractors.dependency import Candidate, dependency_validate
from slotentropy.extractors.phrasal import non_possessive_noun_test
from slotentropy.query import MatchSpan


class NVNExtractor(BaseExtractor):
    """Noun, participle, noun, with alpha modifying the participle."""

    kind = ConstructionKind.NVN

    def build_query(self) -> str:
        noun = non_possessive_noun_test(self.rules.possessive_tags)
        return f"[{noun}] [{self.participle_test()}] [{noun}] within <s/>"

    def resolve(self, span: MatchSpan, sentence: Sentence) -> SpanOutcome:
        candidate = Candidate(
            participle_index=span.token_for(1),
            alpha_index=span.token_for(0),
            head_noun_index=span.token_for(2),
        )
        if not dependency_validate(candidate, sentence, self.kind, self.rules):
            return self._reject(SpanStatus.DEPENDENCY)
        return self._accept(
            sentence,
            participle_index=candidate.participle_index,
            alpha=sentence.token(candidate.alpha_index),
            head_noun=sentence.token(candidate.head_noun_index),
        )


class HyphenatedExtractor(BaseExtractor):
    """Single token alpha-participle directly preceding a noun."""

    kind = ConstructionKind.HYPHENATED

    @property
    def surface_forms(self) -> list[str]:
        if self.lexicon is None:
            return []
        return sorted(self.lexicon.forms_of(self.participle))

    def build_query(self) -> Optional[str]:
        forms = self.surface_forms
        if not forms:
            return None
        alternatives = "|".join(re.escape(form) for form in forms)
        return f"[word={quote_value(f'.+-(?i:{alternatives})')}] within <s/>"

    def resolve(self, span: MatchSpan, sentence: Sentence) -> SpanOutcome:
        token = sentence.token(span.start)
        parts = split_hyphenated(token.form)
        if parts is None or parts[1].lower() not in self.surface_forms:
            return self._reject(SpanStatus.FILTERED)
        alpha, _ = parts

        if token.index == len(sentence):
            return self._reject(SpanStatus.FILTERED)
        following = sentence.token(token.index + 1)
        if not is_nominal(following.xpos, self.rules.possessive_tags):
            return self._reject(SpanStatus.FILTERED)
        if self.rules.hyphen_noun_lexicon and alpha.lower() not in self.lexicon.nominal_lemmas:
            return self._reject(SpanStatus.FILTERED)

        candidate = Candidate(participle_index=token.index, alpha_index=None, head_noun_index=following.index)
        if not dependency_validate(candidate, sentence, self.kind, self.rules):
            return self._reject(SpanStatus.DEPENDENCY)
        return self._accept(
            sentence,
            participle_index=token.index,
            alpha=None,
            head_noun=following,
            alpha_form=alpha,
            alpha_lemma=alpha.lower(),
        )
