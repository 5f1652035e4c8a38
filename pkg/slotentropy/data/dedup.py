"""
Exact-duplicate filtering.
Keeps the first occurrence of every distinct token-form sequence.
"""

import hashlib
from typing import Iterable, Iterator, Optional

from slotentropy.data.models import Sentence


def sentence_digest(sentence: Sentence) -> bytes:
    """Fixed-size key of a sentence's form sequence."""
    joined = "\x1f".join(sentence.forms).encode("utf-8")
    return hashlib.blake2b(joined, digest_size=16).digest()


def filter_exact_duplicates(
    sentences: Iterable[Sentence], seen: Optional[set[bytes]] = None
) -> Iterator[Sentence]:
    """
    Drop sentences whose forms repeat an earlier sentence verbatim.

    Only forms decide; lemmas, tags and ids are ignored. Near-duplicates
    are kept. Pass a shared seen set to deduplicate across several streams.
    """
    if seen is None:
        seen = set()
    for sentence in sentences:
        key = sentence_digest(sentence)
        if key in seen:
            continue
        seen.add(key)
        yield sentence
