"""
Query AST.
Token-pattern sequences of the supported CQL subset and their canonical
text rendering.
"""

from dataclasses import dataclass
from enum import Enum


ATTRIBUTES = ("tag", "lemma", "word")


class Operator(str, Enum):
    EQUALS = "="
    NOT_EQUALS = "!="


@dataclass(frozen=True, slots=True)
class AttributeTest:
    """attribute (=|!=) "regex", matched against the whole attribute value."""

    attribute: str
    operator: Operator
    pattern: str

    def render(self) -> str:
        escaped = self.pattern.replace('"', '\\"')
        return f'{self.attribute}{self.operator.value}"{escaped}"'


@dataclass(frozen=True, slots=True)
class TokenPattern:
    """Conjunction of tests for one token; optional = trailing '?'."""

    tests: tuple[AttributeTest, ...] = ()
    optional: bool = False

    def render(self) -> str:
        body = " & ".join(t.render() for t in self.tests)
        return f"[{body}]" + ("?" if self.optional else "")


@dataclass(frozen=True, slots=True)
class QueryAST:
    sequence: tuple[TokenPattern, ...]
    scope: str = "s"


def render(ast: QueryAST) -> str:
    """Canonical query text; parse_query(render(ast)) == ast."""
    patterns = " ".join(p.render() for p in ast.sequence)
    return f"{patterns} within <{ast.scope}/>"
