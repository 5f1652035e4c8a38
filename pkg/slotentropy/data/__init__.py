"""
Corpus ingest package.
CoNLL-U streaming, tag helpers, deduplication and the corpus lexicon.
"""

from slotentropy.data.dedup import filter_exact_duplicates
from slotentropy.data.lexicon import CorpusLexicon
from slotentropy.data.models import Sentence, Token, validate_sentence
from slotentropy.data.reader import ConllReader, parse_conllu, serialize_sentence
from slotentropy.data.tags import is_nominal, map_penn_tag

__all__ = [
    "ConllReader",
    "CorpusLexicon",
    "Sentence",
    "Token",
    "filter_exact_duplicates",
    "is_nominal",
    "map_penn_tag",
    "parse_conllu",
    "serialize_sentence",
    "validate_sentence",
]
