"""
Query engine package.
Parses the CQL subset, compiles it and scans sentences.
"""

from slotentropy.query.ast import AttributeTest, Operator, QueryAST, TokenPattern, render
from slotentropy.query.matcher import CompiledQuery, MatchSpan, compile_query, scan
from slotentropy.query.parser import parse_query

__all__ = [
    "AttributeTest",
    "CompiledQuery",
    "MatchSpan",
    "Operator",
    "QueryAST",
    "TokenPattern",
    "compile_query",
    "parse_query",
    "render",
    "scan",
]
