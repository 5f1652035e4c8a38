from pathlib import Path

import pytest
from loguru import logger

from slotentropy.data.models import Sentence, Token
from slotentropy.data.reader import parse_conllu


FIXTURES = Path(__file__).parent / "fixtures"


def make_sentence(rows, sentence_id="s1"):
    """Sentence from (form, lemma, xpos, head, deprel) tuples."""
    return Sentence(
        id=sentence_id,
        tokens=tuple(
            Token(index=i, form=form, lemma=lemma, upos=None, xpos=xpos, head=head, deprel=deprel)
            for i, (form, lemma, xpos, head, deprel) in enumerate(rows, start=1)
        ),
    )


def conllu_block(rows, sentence_id=None):
    """CoNLL-U text for (form, lemma, xpos, head, deprel) tuples."""
    lines = [f"# sent_id = {sentence_id}"] if sentence_id else []
    for i, (form, lemma, xpos, head, deprel) in enumerate(rows, start=1):
        lines.append("\t".join([str(i), form, lemma, "_", xpos, "_", str(head), deprel, "_", "_"]))
    return "\n".join(lines) + "\n\n"


@pytest.fixture
def fixture_corpus():
    with open(FIXTURES / "constructions.conllu", encoding="utf-8") as fh:
        return {s.id: s for s in parse_conllu(fh, source="constructions.conllu")}


@pytest.fixture
def log_messages():
    """Collect loguru messages emitted during a test."""
    messages = []
    handler_id = logger.add(lambda m: messages.append(m.record["message"]), level="DEBUG")
    yield messages
    logger.remove(handler_id)
