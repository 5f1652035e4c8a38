"""
Corpus lexicon.
Collects, in one streaming pass, the facts extraction needs from the whole
corpus: participle surface forms, lemmas attested as nouns and hyphen-tail
frequencies for participle discovery.
"""

from collections import Counter, defaultdict
from dataclasses import dataclass, field
from typing import Collection, Iterable, Mapping, Optional

from slotentropy.config import DEFAULT_POSSESSIVE_TAGS
from slotentropy.data.models import Sentence
from slotentropy.data.tags import is_nominal


PARTICIPLE_TAG = "VVN"


def split_hyphenated(form: str) -> Optional[tuple[str, str]]:
    """Split at the last hyphen; None unless both sides are non-empty."""
    alpha, sep, tail = form.rpartition("-")
    if not sep or not alpha or not tail:
        return None
    return alpha, tail


@dataclass
class CorpusLexicon:
    """Corpus-wide facts used by the extractors."""

    participle_forms: dict[str, set[str]] = field(default_factory=lambda: defaultdict(set))
    nominal_lemmas: set[str] = field(default_factory=set)
    hyphen_tails: Counter = field(default_factory=Counter)
    possessive_tags: frozenset[str] = DEFAULT_POSSESSIVE_TAGS

    @classmethod
    def from_forms(cls, forms: Mapping[str, Iterable[str]]) -> "CorpusLexicon":
        """Lexicon with known participle forms only (used outside the pipeline)."""
        lexicon = cls()
        for lemma, surfaces in forms.items():
            lexicon.participle_forms[lemma].update(f.lower() for f in surfaces if "-" not in f)
        return lexicon

    def observe(self, sentence: Sentence) -> None:
        for token in sentence.tokens:
            if token.xpos == PARTICIPLE_TAG and "-" not in token.form:
                self.participle_forms[token.lemma].add(token.form.lower())
            if is_nominal(token.xpos, self.possessive_tags):
                self.nominal_lemmas.add(token.lemma.lower())
            parts = split_hyphenated(token.form)
            if parts is not None:
                self.hyphen_tails[parts[1].lower()] += 1

    def observe_all(self, sentences: Iterable[Sentence]) -> "CorpusLexicon":
        for sentence in sentences:
            self.observe(sentence)
        return self

    def merge(self, other: "CorpusLexicon") -> "CorpusLexicon":
        merged = CorpusLexicon(possessive_tags=self.possessive_tags)
        for source in (self, other):
            for lemma, forms in source.participle_forms.items():
                merged.participle_forms[lemma].update(forms)
            merged.nominal_lemmas.update(source.nominal_lemmas)
            merged.hyphen_tails.update(source.hyphen_tails)
        return merged

    def forms_of(self, lemma: str) -> set[str]:
        """Lowercased participle surface forms attested for a lemma."""
        return set(self.participle_forms.get(lemma, ()))

    def hyphen_frequency(self, lemma: str) -> int:
        """Raw count of hyphenated tokens ending in one of the lemma's forms."""
        return sum(self.hyphen_tails.get(form, 0) for form in self.forms_of(lemma))

    def rank_participles(self, cap: int, exclude: Collection[str] = ()) -> list[str]:
        """
        Top participle lemmas by hyphenated-compound frequency.

        Ties break lexicographically; lemmas never seen in a hyphenated
        compound are not candidates.
        """
        scored = [
            (self.hyphen_frequency(lemma), lemma)
            for lemma in self.participle_forms
            if lemma not in exclude
        ]
        scored = [(freq, lemma) for freq, lemma in scored if freq > 0]
        scored.sort(key=lambda item: (-item[0], item[1]))
        return [lemma for _, lemma in scored[:cap]]
