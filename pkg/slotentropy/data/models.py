"""
Corpus data models.
Defines the token and sentence values every query runs over.
"""

from dataclasses import dataclass
from typing import Iterator, Optional

from slotentropy.errors import SentenceValidationError


@dataclass(frozen=True, slots=True)
class Token:
    """One annotated word (1-based index, head 0 = root)."""

    index: int
    form: str
    lemma: str
    upos: Optional[str]
    xpos: Optional[str]
    head: int
    deprel: Optional[str]


@dataclass(frozen=True, slots=True)
class Sentence:
    """A sentence: document-scoped id plus its ordered tokens."""

    id: str
    tokens: tuple[Token, ...]

    def __len__(self) -> int:
        return len(self.tokens)

    def __iter__(self) -> Iterator[Token]:
        return iter(self.tokens)

    def token(self, index: int) -> Token:
        """Token by 1-based index."""
        if index < 1 or index > len(self.tokens):
            raise IndexError(f"token index {index} out of range in sentence {self.id}")
        return self.tokens[index - 1]

    def children(self, index: int) -> list[Token]:
        """Tokens whose head is the given index."""
        return [t for t in self.tokens if t.head == index]

    @property
    def forms(self) -> tuple[str, ...]:
        return tuple(t.form for t in self.tokens)


def validate_sentence(sentence: Sentence) -> Sentence:
    """
    Check token numbering and head pointers.

    Raises:
        SentenceValidationError: on gaps in numbering, empty form/lemma,
            self-loops, out-of-range heads or cycles
    """
    n = len(sentence.tokens)
    if n == 0:
        raise SentenceValidationError("sentence has no tokens", sentence.id)

    for position, token in enumerate(sentence.tokens, start=1):
        if token.index != position:
            raise SentenceValidationError(
                f"token ids must run 1..{n}, found {token.index} at position {position}",
                sentence.id,
            )
        if not token.form or not token.lemma:
            raise SentenceValidationError(f"token {token.index} has an empty form or lemma", sentence.id)
        if token.head == token.index:
            raise SentenceValidationError(f"token {token.index} is its own head", sentence.id)
        if token.head < 0 or token.head > n:
            raise SentenceValidationError(
                f"token {token.index} has head {token.head} outside 0..{n}", sentence.id
            )

    # Every head chain must reach 0 within n steps
    resolved = {0}
    for token in sentence.tokens:
        path = []
        current = token.index
        while current not in resolved:
            if current in path:
                raise SentenceValidationError(f"head cycle through token {current}", sentence.id)
            path.append(current)
            current = sentence.tokens[current - 1].head
        resolved.update(path)

    return sentence
