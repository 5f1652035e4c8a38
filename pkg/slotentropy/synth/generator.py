"""
Synthetic corpus generator.

Writes a Penn-tagged, dependency-parsed CoNLL-U corpus in which every
participle occurs in all four constructions with a controlled alpha
distribution, plus decoy sentences the extractors must reject. A sidecar
TSV lists every planted match in the matches.tsv layout.
"""

import itertools
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

import numpy as np
from loguru import logger
from pydantic import BaseModel, Field, field_validator, model_validator

from slotentropy.data.models import Sentence, Token
from slotentropy.data.reader import write_conllu
from slotentropy.extractors.base import KIND_ORDER, ConstructionKind, ConstructionMatch
from slotentropy.report.tables import write_matches


# (lemma, past participle)
VERBS: tuple[tuple[str, str], ...] = (
    ("stain", "stained"),
    ("cover", "covered"),
    ("fill", "filled"),
    ("make", "made"),
    ("write", "written"),
    ("drive", "driven"),
    ("power", "powered"),
    ("inspire", "inspired"),
    ("soak", "soaked"),
    ("load", "loaded"),
    ("base", "based"),
    ("paint", "painted"),
    ("build", "built"),
    ("grow", "grown"),
    ("crowd", "crowded"),
    ("negotiate", "negotiated"),
)
PREPOSITIONS = ("with", "by", "in")
ADVERBS = ("badly", "deeply", "fully")
SYLLABLES = ("ba", "de", "fi", "go", "ku", "la", "me", "no", "pa", "ri", "so", "ta", "vu", "xe", "zo")
HEAD_NOUNS = 40


class SynthSpec(BaseModel):
    """Parameters of a synthetic corpus."""

    seed: int = Field(..., ge=0, lt=2**64)
    n_participles: int = Field(default=8, ge=1, le=len(VERBS))
    tokens_per_cell: int = Field(default=240, ge=0)
    overrides: dict[str, dict[ConstructionKind, int]] = Field(
        default_factory=dict, description="participle -> construction -> token count"
    )
    vocabulary: int = Field(default=400, ge=1, le=len(SYLLABLES) ** 3 - HEAD_NOUNS)
    compound_zipf: float = Field(default=1.6, ge=0.0, description="Zipf exponent of compound alpha slots")
    phrasal_zipf: float = Field(default=0.0, ge=0.0, description="0 gives a uniform alpha slot")
    jitter: float = Field(default=0.2, ge=0.0, description="Per-participle spread of the compound exponent")
    decoys_per_cell: int = Field(default=10, ge=0)
    adverb_rate: float = Field(default=0.2, ge=0.0, le=1.0)

    @field_validator("overrides")
    @classmethod
    def _known_participles(cls, value: dict) -> dict:
        known = {lemma for lemma, _ in VERBS}
        unknown = sorted(set(value) - known)
        if unknown:
            raise ValueError(f"unknown participle(s) {unknown}; choose from {sorted(known)}")
        return value

    @model_validator(mode="after")
    def _overrides_in_range(self) -> "SynthSpec":
        selected = {lemma for lemma, _ in self.participles}
        outside = sorted(set(self.overrides) - selected)
        if outside:
            raise ValueError(f"overrides name participle(s) {outside} beyond the first {self.n_participles}")
        return self

    @property
    def participles(self) -> tuple[tuple[str, str], ...]:
        return VERBS[: self.n_participles]

    def count(self, participle: str, kind: ConstructionKind) -> int:
        return self.overrides.get(participle, {}).get(kind, self.tokens_per_cell)


@dataclass(frozen=True)
class SynthResult:
    corpus_path: Path
    truth_path: Path
    n_sentences: int
    n_planted: int


# (form, lemma, upos, xpos, head, deprel)
_Row = tuple[str, str, str, str, int, str]


@dataclass
class _Draft:
    rows: list[_Row]
    planted: Optional[dict] = None


def _vocabulary(rng: np.random.Generator, size: int) -> tuple[list[str], list[str]]:
    """Distinct pseudo-nouns: alpha candidates and head nouns."""
    words = ["".join(parts) for parts in itertools.product(SYLLABLES, repeat=3)]
    order = rng.permutation(len(words))[: size + HEAD_NOUNS]
    picked = [words[i] for i in order]
    return picked[:size], picked[size:]


def _zipf_probabilities(size: int, exponent: float) -> np.ndarray:
    weights = np.arange(1, size + 1, dtype=float) ** -exponent
    return weights / weights.sum()


class _SentenceFactory:
    """Builds token rows for each construction and its decoy."""

    def __init__(self, rng: np.random.Generator, adverb_rate: float):
        self.rng = rng
        self.adverb_rate = adverb_rate

    def _pick(self, options) -> str:
        return options[int(self.rng.integers(len(options)))]

    def passive(self, lemma: str, form: str, alpha: str, head: str) -> _Draft:
        prep = self._pick(PREPOSITIONS)
        adverb = self._pick(ADVERBS) if self.rng.random() < self.adverb_rate else None
        part = 5 if adverb else 4
        rows: list[_Row] = [
            ("The", "the", "DET", "DT", 2, "det"),
            (head, head, "NOUN", "NN", part, "nsubj:pass"),
            ("was", "be", "AUX", "VBD", part, "aux:pass"),
        ]
        if adverb:
            rows.append((adverb, adverb, "ADV", "RB", part, "advmod"))
        rows += [
            (form, lemma, "VERB", "VBN", 0, "root"),
            (prep, prep, "ADP", "IN", part + 2, "case"),
            (alpha + "s", alpha, "NOUN", "NNS", part, "obl"),
            (".", ".", "PUNCT", ".", part, "punct"),
        ]
        return _Draft(rows, dict(participle_index=part, alpha_index=part + 2, head=head, prep=prep, alpha=alpha))

    def passive_decoy(self, lemma: str, form: str, alpha: str, head: str) -> _Draft:
        prep = self._pick(PREPOSITIONS)
        rows = [
            ("The", "the", "DET", "DT", 2, "det"),
            (head, head, "NOUN", "NN", 0, "root"),
            ("which", "which", "PRON", "WDT", 5, "nsubj:pass"),
            ("was", "be", "AUX", "VBD", 5, "aux:pass"),
            (form, lemma, "VERB", "VBN", 2, "acl:relcl"),
            (prep, prep, "ADP", "IN", 7, "case"),
            (alpha + "s", alpha, "NOUN", "NNS", 5, "obl"),
            (".", ".", "PUNCT", ".", 2, "punct"),
        ]
        return _Draft(rows)

    def reduced_relative(self, lemma: str, form: str, alpha: str, head: str, attach_to_participle: bool = True) -> _Draft:
        prep = self._pick(PREPOSITIONS)
        rows = [
            ("I", "I", "PRON", "PRP", 2, "nsubj"),
            ("saw", "see", "VERB", "VBD", 0, "root"),
            ("the", "the", "DET", "DT", 4, "det"),
            (head, head, "NOUN", "NN", 2, "obj"),
            (form, lemma, "VERB", "VBN", 4, "acl"),
            (prep, prep, "ADP", "IN", 7, "case"),
            (alpha + "s", alpha, "NOUN", "NNS", 5 if attach_to_participle else 2, "obl"),
            (".", ".", "PUNCT", ".", 2, "punct"),
        ]
        if not attach_to_participle:
            return _Draft(rows)
        return _Draft(rows, dict(participle_index=5, alpha_index=7, head=head, prep=prep, alpha=alpha))

    def nvn(self, lemma: str, form: str, alpha: str, head: str) -> _Draft:
        rows = [
            ("They", "they", "PRON", "PRP", 2, "nsubj"),
            ("sold", "sell", "VERB", "VBD", 0, "root"),
            ("a", "a", "DET", "DT", 6, "det"),
            (alpha, alpha, "NOUN", "NN", 5, "compound"),
            (form, lemma, "VERB", "VBN", 6, "amod"),
            (head, head, "NOUN", "NN", 2, "obj"),
            (".", ".", "PUNCT", ".", 2, "punct"),
        ]
        return _Draft(rows, dict(participle_index=5, alpha_index=4, head=head, prep=None, alpha=alpha))

    def nvn_decoy(self, lemma: str, form: str, alpha: str, head: str) -> _Draft:
        # "one reason stained glass became popular": alpha does not modify the participle
        rows = [
            ("One", "one", "NUM", "CD", 2, "nummod"),
            (alpha, alpha, "NOUN", "NN", 0, "root"),
            (form, lemma, "VERB", "VBN", 4, "amod"),
            (head, head, "NOUN", "NN", 5, "nsubj"),
            ("became", "become", "VERB", "VBD", 2, "acl:relcl"),
            ("popular", "popular", "ADJ", "JJ", 5, "xcomp"),
            (".", ".", "PUNCT", ".", 2, "punct"),
        ]
        return _Draft(rows)

    def hyphenated(self, lemma: str, form: str, alpha: str, head: str) -> _Draft:
        compound = f"{alpha}-{form}"
        rows = [
            ("They", "they", "PRON", "PRP", 2, "nsubj"),
            ("sold", "sell", "VERB", "VBD", 0, "root"),
            ("a", "a", "DET", "DT", 5, "det"),
            (compound, compound, "ADJ", "JJ", 5, "amod"),
            (head, head, "NOUN", "NN", 2, "obj"),
            (".", ".", "PUNCT", ".", 2, "punct"),
        ]
        return _Draft(rows, dict(participle_index=4, alpha_index=None, head=head, prep=None, alpha=alpha))

    def hyphenated_decoy(self, lemma: str, form: str, alpha: str, head: str) -> _Draft:
        compound = f"{alpha}-{form}"
        rows = [
            ("The", "the", "DET", "DT", 2, "det"),
            (head, head, "NOUN", "NN", 4, "nsubj"),
            ("was", "be", "AUX", "VBD", 4, "cop"),
            (compound, compound, "ADJ", "JJ", 0, "root"),
            (".", ".", "PUNCT", ".", 4, "punct"),
        ]
        return _Draft(rows)


def _planted_match(draft: _Draft, kind: ConstructionKind, participle: str, sentence_id: str) -> ConstructionMatch:
    info = draft.planted
    alpha_form = info["alpha"] if kind is ConstructionKind.HYPHENATED else draft.rows[info["alpha_index"] - 1][0]
    return ConstructionMatch(
        kind=kind,
        participle_lemma=participle,
        alpha_lemma=info["alpha"],
        alpha_form=alpha_form,
        head_noun_lemma=info["head"],
        preposition=info["prep"],
        sentence_id=sentence_id,
        participle_index=info["participle_index"],
        alpha_index=info["alpha_index"],
    )


def _to_sentence(sentence_id: str, rows: list[_Row]) -> Sentence:
    return Sentence(
        id=sentence_id,
        tokens=tuple(
            Token(index=i, form=f, lemma=lem, upos=u, xpos=x, head=h, deprel=d)
            for i, (f, lem, u, x, h, d) in enumerate(rows, start=1)
        ),
    )


def generate_synthetic_corpus(spec: SynthSpec, out_path: Path) -> SynthResult:
    """
    Write a synthetic CoNLL-U corpus and its planted-truth sidecar.

    Args:
        spec: Corpus parameters (seeded)
        out_path: Corpus file; the sidecar is written next to it as
            <stem>.truth.tsv

    Returns:
        SynthResult with both paths and sentence counts
    """
    rng = np.random.default_rng(spec.seed)
    alphas, heads = _vocabulary(rng, spec.vocabulary)
    factory = _SentenceFactory(rng, spec.adverb_rate)

    builders = {
        ConstructionKind.PASSIVE: (factory.passive, factory.passive_decoy),
        ConstructionKind.REDUCED_RELATIVE: (
            factory.reduced_relative,
            lambda *args: factory.reduced_relative(*args, attach_to_participle=False),
        ),
        ConstructionKind.NVN: (factory.nvn, factory.nvn_decoy),
        ConstructionKind.HYPHENATED: (factory.hyphenated, factory.hyphenated_decoy),
    }
    phrasal_p = _zipf_probabilities(spec.vocabulary, spec.phrasal_zipf)

    drafts: list[tuple[_Draft, ConstructionKind, str]] = []
    for lemma, form in spec.participles:
        exponent = max(spec.compound_zipf + rng.uniform(-spec.jitter, spec.jitter), 0.0)
        compound_p = _zipf_probabilities(spec.vocabulary, exponent)
        # each participle sees its own ordering of the alpha vocabulary
        vocabulary = [alphas[i] for i in rng.permutation(spec.vocabulary)]
        for kind in KIND_ORDER:
            build, build_decoy = builders[kind]
            p = phrasal_p if kind.is_phrasal else compound_p
            for index in rng.choice(spec.vocabulary, size=spec.count(lemma, kind), p=p):
                drafts.append((build(lemma, form, vocabulary[index], heads[int(rng.integers(len(heads)))]), kind, lemma))
            for _ in range(spec.decoys_per_cell):
                alpha = vocabulary[int(rng.integers(spec.vocabulary))]
                drafts.append((build_decoy(lemma, form, alpha, heads[int(rng.integers(len(heads)))]), kind, lemma))

    sentences: list[Sentence] = []
    truth: list[ConstructionMatch] = []
    for position, draft_index in enumerate(rng.permutation(len(drafts)), start=1):
        draft, kind, lemma = drafts[draft_index]
        sentence_id = f"synth-{position:06d}"
        sentences.append(_to_sentence(sentence_id, draft.rows))
        if draft.planted is not None:
            truth.append(_planted_match(draft, kind, lemma, sentence_id))

    out_path = Path(out_path)
    out_path.parent.mkdir(parents=True, exist_ok=True)
    with open(out_path, "w", encoding="utf-8", newline="\n") as fh:
        write_conllu(sentences, fh)
    truth_path = out_path.with_name(f"{out_path.stem}.truth.tsv")
    write_matches(truth, truth_path)

    logger.info(f"Wrote {len(sentences)} sentences ({len(truth)} planted matches) to {out_path}")
    return SynthResult(corpus_path=out_path, truth_path=truth_path, n_sentences=len(sentences), n_planted=len(truth))
