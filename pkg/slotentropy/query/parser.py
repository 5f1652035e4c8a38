"""
CQL subset parser.

Grammar:
    query    := pattern+ ["within" "<" "s" "/>"]
    pattern  := "[" [test ("&" test)*] "]" ["?"]
    test     := ("tag" | "lemma" | "word") ("=" | "!=") quoted-regex

Errors carry the character offset at which parsing failed.
"""

import re

import pyparsing as pp

from slotentropy.errors import QueryParseError
from slotentropy.query.ast import ATTRIBUTES, AttributeTest, Operator, QueryAST, TokenPattern


def _check_attribute(s: str, loc: int, toks: pp.ParseResults) -> None:
    if toks[0] not in ATTRIBUTES:
        raise pp.ParseFatalException(s, loc, f"unknown attribute {toks[0]!r}, expected one of {', '.join(ATTRIBUTES)}")


def _make_test(s: str, loc: int, toks: pp.ParseResults) -> AttributeTest:
    attribute, operator, pattern = toks[0], toks[1], toks[2]
    try:
        re.compile(pattern)
    except re.error as e:
        raise pp.ParseFatalException(s, loc, f"invalid regular expression {pattern!r}: {e}") from None
    return AttributeTest(attribute=attribute, operator=Operator(operator), pattern=pattern)


def _make_pattern(s: str, loc: int, toks: pp.ParseResults) -> TokenPattern:
    tests = tuple(toks[0])
    return TokenPattern(tests=tests, optional=len(toks) > 1)


def _build_grammar() -> pp.ParserElement:
    attribute = pp.Word(pp.alphas + "_", pp.alphanums + "_").set_parse_action(_check_attribute)
    operator = pp.Literal("!=") | pp.Literal("=")
    value = pp.QuotedString('"', esc_quote='\\"', convert_whitespace_escapes=False) | pp.QuotedString(
        "'", esc_quote="\\'", convert_whitespace_escapes=False
    )
    test = (attribute - operator - value).set_parse_action(_make_test)
    tests = pp.Optional(test + pp.ZeroOrMore(pp.Suppress("&") - test))
    pattern = (
        pp.Suppress("[") - pp.Group(tests) - pp.Suppress("]") + pp.Optional(pp.Literal("?"))
    ).set_parse_action(_make_pattern)
    within = pp.Suppress(pp.Keyword("within")) - pp.Suppress("<") - pp.Suppress("s") - pp.Suppress("/>")
    return pp.OneOrMore(pattern) + pp.Optional(within)


_GRAMMAR = _build_grammar()


def parse_query(text: str) -> QueryAST:
    """
    Parse query text into a QueryAST.

    Raises:
        QueryParseError: empty query, unbalanced brackets or quotes,
            unknown attribute, invalid regex, or all patterns optional
    """
    if not text or not text.strip():
        raise QueryParseError("empty query", 0)
    try:
        result = _GRAMMAR.parse_string(text, parse_all=True)
    except pp.ParseBaseException as e:
        raise QueryParseError(e.msg, e.loc) from None

    sequence = tuple(result)
    if all(p.optional for p in sequence):
        raise QueryParseError("at least one token pattern must be non-optional", text.index("["))
    return QueryAST(sequence=sequence)
