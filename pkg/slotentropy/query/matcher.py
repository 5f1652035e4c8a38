"""
Token-pattern matcher.
Compiles a QueryAST once and scans sentences for every satisfying binding.
"""

import re
from dataclasses import dataclass
from typing import Callable, Optional

from slotentropy.data.models import Sentence, Token
from slotentropy.query.ast import AttributeTest, Operator, QueryAST, render


_GETTERS: dict[str, Callable[[Token], str]] = {
    "tag": lambda t: t.xpos or "",
    "lemma": lambda t: t.lemma,
    "word": lambda t: t.form,
}


@dataclass(frozen=True, slots=True)
class MatchSpan:
    """
    One satisfying assignment.

    bindings pairs each consumed pattern index with its 1-based token
    index; skipped optional patterns are absent.
    """

    sentence_id: str
    start: int
    bindings: tuple[tuple[int, int], ...]

    @property
    def end(self) -> int:
        return self.bindings[-1][1]

    @property
    def length(self) -> int:
        return len(self.bindings)

    def token_for(self, pattern_index: int) -> Optional[int]:
        """Token index bound to a pattern, None if the pattern was skipped."""
        for bound_pattern, token_index in self.bindings:
            if bound_pattern == pattern_index:
                return token_index
        return None


@dataclass(frozen=True, slots=True)
class _CompiledTest:
    getter: Callable[[Token], str]
    regex: re.Pattern
    negate: bool

    def accepts(self, token: Token) -> bool:
        return (self.regex.fullmatch(self.getter(token)) is not None) != self.negate


def _compile_test(test: AttributeTest) -> _CompiledTest:
    return _CompiledTest(
        getter=_GETTERS[test.attribute],
        regex=re.compile(test.pattern),
        negate=test.operator is Operator.NOT_EQUALS,
    )


class CompiledQuery:
    """Executable matcher; immutable and safe to share between threads."""

    def __init__(self, ast: QueryAST):
        self.ast = ast
        self._patterns = tuple(
            (tuple(_compile_test(t) for t in pattern.tests), pattern.optional) for pattern in ast.sequence
        )

    def __repr__(self) -> str:
        return f"CompiledQuery({render(self.ast)!r})"

    def scan(self, sentence: Sentence) -> list[MatchSpan]:
        """
        All binding assignments at every start position.

        Optional patterns are tried taken-first, but every satisfying
        assignment is returned. Output is ordered by start index, then by
        number of tokens consumed (descending).
        """
        tokens = sentence.tokens
        spans: list[MatchSpan] = []
        for start in range(len(tokens)):
            found: list[tuple[tuple[int, int], ...]] = []
            self._expand(tokens, 0, start, [], found)
            spans.extend(
                MatchSpan(sentence_id=sentence.id, start=tokens[start].index, bindings=bindings)
                for bindings in found
                if bindings
            )
        spans.sort(key=lambda span: (span.start, -span.length))
        return spans

    def _expand(
        self,
        tokens: tuple[Token, ...],
        pattern_index: int,
        position: int,
        bindings: list[tuple[int, int]],
        found: list[tuple[tuple[int, int], ...]],
    ) -> None:
        if pattern_index == len(self._patterns):
            found.append(tuple(bindings))
            return
        tests, optional = self._patterns[pattern_index]
        if position < len(tokens) and all(t.accepts(tokens[position]) for t in tests):
            bindings.append((pattern_index, tokens[position].index))
            self._expand(tokens, pattern_index + 1, position + 1, bindings, found)
            bindings.pop()
        if optional:
            self._expand(tokens, pattern_index + 1, position, bindings, found)


def compile_query(ast: QueryAST) -> CompiledQuery:
    """Compile an AST; regexes are compiled exactly once."""
    return CompiledQuery(ast)


def scan(query: CompiledQuery, sentence: Sentence) -> list[MatchSpan]:
    return query.scan(sentence)
