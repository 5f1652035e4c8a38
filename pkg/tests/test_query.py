import itertools
import re

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from slotentropy.errors import QueryParseError
from slotentropy.query import AttributeTest, Operator, QueryAST, TokenPattern, compile_query, parse_query, render
from tests.conftest import make_sentence


def sentence_from_tags(tags, sentence_id="q"):
    return make_sentence([(f"w{i}", f"l{i}", tag, 0, "dep") for i, tag in enumerate(tags)], sentence_id)


# ---- parser ----

def test_parses_passive_query():
    ast = parse_query('[tag="VB.*"] [tag="RB"]? [tag="VVN" & lemma="stain"] [tag="IN"] within <s/>')
    assert len(ast.sequence) == 4
    assert ast.sequence[1].optional
    assert ast.sequence[2].tests == (
        AttributeTest("tag", Operator.EQUALS, "VVN"),
        AttributeTest("lemma", Operator.EQUALS, "stain"),
    )
    assert ast.scope == "s"


def test_within_clause_is_optional():
    assert parse_query('[tag="N.*"]') == parse_query('[tag="N.*"] within <s/>')


def test_single_quotes_and_negation():
    [pattern] = parse_query("[tag!='POS']").sequence
    assert pattern.tests == (AttributeTest("tag", Operator.NOT_EQUALS, "POS"),)


def test_empty_pattern_is_wildcard():
    ast = parse_query('[] [tag="IN"]')
    assert ast.sequence[0] == TokenPattern()


@pytest.mark.parametrize(
    "text,offset",
    [
        ("", 0),
        ("   ", 0),
        ('[foo="x"]', 1),
        ('[tag="("]', 1),
        ('[tag="RB"]?', 0),
    ],
)
def test_parse_errors_carry_offset(text, offset):
    with pytest.raises(QueryParseError) as info:
        parse_query(text)
    assert info.value.offset == offset


@pytest.mark.parametrize("text", ['[tag="N.*"', '[tag="N.*]', '[tag "N"]', '[tag="N"] within <p/>', 'tag="N"'])
def test_malformed_queries_are_rejected(text):
    with pytest.raises(QueryParseError):
        parse_query(text)


values = st.sampled_from(["N.*", "VVN", "VB.*", "stain|cover", "a\"b", ".+-(?i:stained)", "IN", ""])
tests = st.builds(AttributeTest, st.sampled_from(["tag", "lemma", "word"]), st.sampled_from(list(Operator)), values)
patterns = st.builds(TokenPattern, st.lists(tests, max_size=3).map(tuple), st.booleans())


@given(st.lists(patterns, min_size=1, max_size=4).filter(lambda ps: not all(p.optional for p in ps)))
def test_render_parse_roundtrip(sequence):
    ast = QueryAST(sequence=tuple(sequence))
    assert parse_query(render(ast)) == ast


# ---- matcher ----

def test_scan_returns_every_optional_binding():
    query = compile_query(parse_query('[tag="VB.*"] [tag="RB"]? [tag="VVN"]'))
    spans = query.scan(sentence_from_tags(["VBD", "RB", "VVN"]))
    assert [span.bindings for span in spans] == [((0, 1), (1, 2), (2, 3))]

    spans = query.scan(sentence_from_tags(["VBD", "VVN", "IN"]))
    assert [span.bindings for span in spans] == [((0, 1), (2, 2))]
    assert spans[0].token_for(1) is None
    assert spans[0].end == 2


def test_regex_is_anchored():
    query = compile_query(parse_query('[tag="N"]'))
    assert query.scan(sentence_from_tags(["NN", "N"]))[0].start == 2


def test_matches_do_not_cross_sentences():
    query = compile_query(parse_query('[tag="NN"] [tag="VVN"]'))
    assert query.scan(sentence_from_tags(["VVN", "NN"])) == []


def brute_force(sequence, tags):
    """Every contiguous binding, enumerating which optional patterns are skipped."""
    found = set()
    optional = [i for i, p in enumerate(sequence) if p.optional]
    for start in range(len(tags)):
        for skipped in itertools.chain.from_iterable(
            itertools.combinations(optional, r) for r in range(len(optional) + 1)
        ):
            used = [i for i in range(len(sequence)) if i not in skipped]
            if not used or start + len(used) > len(tags):
                continue
            ok = all(
                all(
                    (re.fullmatch(t.pattern, tags[start + offset]) is not None) != (t.operator is Operator.NOT_EQUALS)
                    for t in sequence[pattern_index].tests
                )
                for offset, pattern_index in enumerate(used)
            )
            if ok:
                found.add(tuple((pattern_index, start + offset + 1) for offset, pattern_index in enumerate(used)))
    return found


tag_tests = st.builds(
    AttributeTest,
    st.just("tag"),
    st.sampled_from(list(Operator)),
    st.sampled_from(["A", "B", "C", "A|B", ".*", "[BC]"]),
)
tag_patterns = st.builds(TokenPattern, st.lists(tag_tests, max_size=2).map(tuple), st.booleans())


@settings(max_examples=1000, deadline=None)
@given(
    st.lists(tag_patterns, min_size=1, max_size=4).filter(lambda ps: not all(p.optional for p in ps)),
    st.lists(st.sampled_from(["A", "B", "C"]), max_size=7),
)
def test_scan_agrees_with_brute_force(sequence, tags):
    query = compile_query(QueryAST(sequence=tuple(sequence)))
    spans = query.scan(sentence_from_tags(tags))
    bindings = [span.bindings for span in spans]
    assert len(bindings) == len(set(bindings))
    assert set(bindings) == brute_force(sequence, tags)
    assert [s.start for s in spans] == sorted(s.start for s in spans)
