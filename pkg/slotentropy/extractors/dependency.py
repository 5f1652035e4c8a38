"""
Dependency validation.
Checks that a surface match is backed by the expected syntactic attachment.
"""

from dataclasses import dataclass
from typing import Optional

from slotentropy.data.models import Sentence
from slotentropy.data.tags import is_nominal
from slotentropy.extractors.base import DEFAULT_RULES, ConstructionKind, ExtractionRules


@dataclass(frozen=True, slots=True)
class Candidate:
    """Token indices (1-based) of a candidate construction."""

    participle_index: int
    alpha_index: Optional[int]
    head_noun_index: Optional[int] = None
    preposition_index: Optional[int] = None


def _in_range(sentence: Sentence, index: Optional[int]) -> bool:
    return index is not None and 1 <= index <= len(sentence)


def _phrasal_attachment(candidate: Candidate, sentence: Sentence, rules: ExtractionRules) -> bool:
    if not _in_range(sentence, candidate.alpha_index) or not _in_range(sentence, candidate.preposition_index):
        return False
    participle = candidate.participle_index
    alpha = sentence.token(candidate.alpha_index)
    prep = sentence.token(candidate.preposition_index)

    # preposition heads alpha, attached to the participle (pobj style)
    if alpha.head == prep.index and alpha.deprel in rules.phrasal_deprels and prep.head == participle:
        return True
    # alpha is an oblique dependent of the participle, preposition is its case marker
    return (
        alpha.head == participle
        and alpha.deprel in rules.phrasal_deprels
        and prep.head == alpha.index
        and prep.deprel in rules.case_deprels
    )


def _nvn_attachment(candidate: Candidate, sentence: Sentence, rules: ExtractionRules) -> bool:
    if not _in_range(sentence, candidate.alpha_index) or not _in_range(sentence, candidate.head_noun_index):
        return False
    alpha = sentence.token(candidate.alpha_index)
    participle = sentence.token(candidate.participle_index)
    return (
        alpha.head == participle.index
        and alpha.deprel in rules.compound_deprels
        and participle.head == candidate.head_noun_index
        and participle.deprel in rules.adjectival_deprels
    )


def _hyphenated_attachment(candidate: Candidate, sentence: Sentence, rules: ExtractionRules) -> bool:
    head = candidate.head_noun_index
    if head != candidate.participle_index + 1 or not _in_range(sentence, head):
        return False
    return is_nominal(sentence.token(head).xpos, rules.possessive_tags)


def dependency_validate(
    candidate: Candidate,
    sentence: Sentence,
    kind: ConstructionKind,
    rules: ExtractionRules = DEFAULT_RULES,
) -> bool:
    """
    Confirm the syntactic relation a construction requires.

    Args:
        candidate: Token indices found by the surface query
        sentence: Sentence the indices refer to
        kind: Construction being validated
        rules: Accepted dependency labels

    Returns:
        True when the required attachment is present
    """
    if not _in_range(sentence, candidate.participle_index):
        return False
    if kind.is_phrasal:
        return _phrasal_attachment(candidate, sentence, rules)
    if kind is ConstructionKind.NVN:
        return _nvn_attachment(candidate, sentence, rules)
    return _hyphenated_attachment(candidate, sentence, rules)
