"""
CoNLL-U reader module.
Streams dependency-annotated sentences from CoNLL-U input, one block at a
time, and serializes them back.
"""

from dataclasses import dataclass
from pathlib import Path
from typing import IO, Iterable, Iterator, Optional, Union

from conllu.exceptions import ParseException
from conllu.models import Token as ConllToken
from conllu.models import TokenList
from conllu.parser import parse_comment_line
from loguru import logger

from slotentropy.data.models import Sentence, Token, validate_sentence
from slotentropy.data.tags import map_penn_tag
from slotentropy.errors import ConllFormatError, SentenceValidationError


CONLLU_FIELDS = ("id", "form", "lemma", "upos", "xpos", "feats", "head", "deprel", "deps", "misc")
EMPTY = "_"


@dataclass
class ReaderStats:
    """Counters for one or more streams."""

    sentences: int = 0
    malformed: int = 0
    invalid: int = 0

    def merge(self, other: "ReaderStats") -> "ReaderStats":
        return ReaderStats(
            sentences=self.sentences + other.sentences,
            malformed=self.malformed + other.malformed,
            invalid=self.invalid + other.invalid,
        )


def _nullable(value: str) -> Optional[str]:
    return None if value == EMPTY else value


def _comment_metadata(line: str) -> dict:
    """Key/value pairs of a '#' line; bare comments yield nothing."""
    try:
        parsed = parse_comment_line(line)
    except ParseException:
        return {}
    return dict(parsed or {})


class ConllReader:
    """
    Single-pass CoNLL-U reader.

    Memory use is bounded by the largest sentence: lines are consumed
    lazily and each block is released once its Sentence is yielded.
    """

    def __init__(self, map_tags: bool = True, strict: bool = True):
        """
        Args:
            map_tags: Rewrite Penn verb tags to Sketch Engine names
            strict: Raise on format errors instead of skipping the block
        """
        self.map_tags = map_tags
        self.strict = strict
        self.stats = ReaderStats()

    def read(self, stream: Iterable[Union[str, bytes]], source: Optional[str] = None) -> Iterator[Sentence]:
        """
        Yield one validated Sentence per blank-line-delimited block.

        Raises:
            ConllFormatError: wrong column count, non-integer ID/HEAD or
                undecodable bytes (strict mode only)
        """
        tokens: list[Token] = []
        sent_id: Optional[str] = None
        block_no = 0
        broken = False

        for line_no, raw in enumerate(stream, start=1):
            try:
                line = raw.decode("utf-8") if isinstance(raw, bytes) else raw
            except UnicodeDecodeError as e:
                self._format_error(f"invalid UTF-8: {e.reason}", line_no, source)
                broken = True
                continue
            line = line.rstrip("\r\n")

            if not line.strip():
                if tokens or broken:
                    block_no += 1
                    sentence = self._finish(tokens, sent_id, block_no, source, broken)
                    if sentence is not None:
                        yield sentence
                tokens, sent_id, broken = [], None, False
                continue

            if broken:
                continue

            if line.startswith("#"):
                metadata = _comment_metadata(line)
                if metadata.get("sent_id"):
                    sent_id = metadata["sent_id"]
                continue

            try:
                token = self._parse_token(line, line_no, source)
            except ConllFormatError as e:
                if self.strict:
                    raise
                logger.warning(f"Skipping malformed block: {e}")
                broken = True
                continue
            if token is not None:
                tokens.append(token)

        if tokens or broken:
            block_no += 1
            sentence = self._finish(tokens, sent_id, block_no, source, broken)
            if sentence is not None:
                yield sentence

    def _format_error(self, message: str, line_no: int, source: Optional[str]) -> None:
        error = ConllFormatError(message, line_no, source)
        if self.strict:
            raise error
        logger.warning(f"Skipping malformed block: {error}")

    def _parse_token(self, line: str, line_no: int, source: Optional[str]) -> Optional[Token]:
        fields = line.split("\t")
        if len(fields) != len(CONLLU_FIELDS):
            raise ConllFormatError(
                f"expected {len(CONLLU_FIELDS)} tab-separated fields, found {len(fields)}",
                line_no,
                source,
            )
        token_id, form, lemma, upos, xpos, _feats, head, deprel, _deps, _misc = fields

        # Multiword ranges (3-4) and empty nodes (3.1) carry no tree position
        if "-" in token_id or "." in token_id:
            return None
        try:
            index = int(token_id)
        except ValueError:
            raise ConllFormatError(f"non-integer ID {token_id!r}", line_no, source) from None
        try:
            head_index = int(head)
        except ValueError:
            raise ConllFormatError(f"non-integer HEAD {head!r}", line_no, source) from None

        xpos_value = _nullable(xpos)
        if self.map_tags:
            xpos_value = map_penn_tag(xpos_value, lemma)

        return Token(
            index=index,
            form=form,
            lemma=lemma,
            upos=_nullable(upos),
            xpos=xpos_value,
            head=head_index,
            deprel=_nullable(deprel),
        )

    def _finish(
        self,
        tokens: list[Token],
        sent_id: Optional[str],
        block_no: int,
        source: Optional[str],
        broken: bool,
    ) -> Optional[Sentence]:
        if broken:
            self.stats.malformed += 1
            return None
        sentence = Sentence(id=sent_id or f"{source or 'stream'}#{block_no}", tokens=tuple(tokens))
        try:
            validate_sentence(sentence)
        except SentenceValidationError as e:
            self.stats.invalid += 1
            logger.warning(f"Skipping invalid sentence: {e}")
            return None
        self.stats.sentences += 1
        return sentence


def parse_conllu(
    stream: Iterable[Union[str, bytes]],
    source: Optional[str] = None,
    map_tags: bool = True,
    strict: bool = True,
) -> Iterator[Sentence]:
    """Lazily parse CoNLL-U text or bytes into Sentences."""
    return ConllReader(map_tags=map_tags, strict=strict).read(stream, source=source)


def read_conllu_file(path: Path, reader: ConllReader) -> Iterator[Sentence]:
    """Stream sentences from a file on disk with the given reader."""
    with open(path, "rb") as fh:
        yield from reader.read(fh, source=str(path))


def serialize_sentence(sentence: Sentence) -> str:
    """Render a Sentence as a CoNLL-U block (with trailing blank line)."""
    tokens = [
        ConllToken(
            {
                "id": t.index,
                "form": t.form,
                "lemma": t.lemma,
                "upos": t.upos,
                "xpos": t.xpos,
                "feats": None,
                "head": t.head,
                "deprel": t.deprel,
                "deps": None,
                "misc": None,
            }
        )
        for t in sentence.tokens
    ]
    return TokenList(tokens, metadata={"sent_id": sentence.id}).serialize()


def write_conllu(sentences: Iterable[Sentence], out: IO[str], header: Optional[dict] = None) -> int:
    """Write sentences to a text stream; returns the number written."""
    if header:
        for key, value in header.items():
            out.write(f"# {key} = {value}\n" if value is not None else f"# {key}\n")
    count = 0
    for sentence in sentences:
        out.write(serialize_sentence(sentence))
        count += 1
    return count
