"""Sentence Plan Language reader and writer"""
import logging

from pydantic import ValidationError

from models.semantics import Concept, RoleFiller, SemanticNode, SemanticValue
from semantics.tokens import Token, TokenizeError, TokenKind, tokenize

logger = logging.getLogger(__name__)


class SPLParseError(ValueError):
    """Raised for malformed SPL input"""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class _Parser:
    def __init__(self, text: str):
        try:
            self.tokens = tokenize(text, split_slash=True)
        except TokenizeError as e:
            raise SPLParseError(str(e).rsplit(" at position", 1)[0], e.position) from e
        self.index = 0
        self.end = len(text)

    def peek(self) -> Token:
        if self.index >= len(self.tokens):
            raise SPLParseError("unbalanced parentheses: unexpected end of input", self.end)
        return self.tokens[self.index]

    def next(self) -> Token:
        token = self.peek()
        self.index += 1
        return token

    def node(self) -> SemanticNode:
        opening = self.next()
        if opening.kind is not TokenKind.LPAREN:
            raise SPLParseError("expected '('", opening.position)
        var = self.next()
        if var.kind is not TokenKind.SYMBOL:
            raise SPLParseError("expected instance variable", var.position)
        slash = self.next()
        if slash.kind is not TokenKind.SLASH:
            raise SPLParseError("missing '/' after instance variable", slash.position)
        concept_token = self.next()
        if concept_token.kind not in (TokenKind.CONCEPT, TokenKind.SYMBOL):
            raise SPLParseError("expected concept", concept_token.position)
        if not concept_token.value.strip():
            raise SPLParseError("empty concept name", concept_token.position)

        roles: list[RoleFiller] = []
        seen: set[str] = set()
        while self.peek().kind is not TokenKind.RPAREN:
            keyword = self.next()
            if keyword.kind is not TokenKind.SYMBOL or not keyword.value.startswith(":"):
                raise SPLParseError("expected role keyword", keyword.position)
            name = keyword.value.lower()
            if name in seen:
                raise SPLParseError(f"duplicate role keyword {name}", keyword.position)
            seen.add(name)
            roles.append(RoleFiller(keyword=name, value=self.value()))
        self.next()

        try:
            return SemanticNode(
                var=var.value,
                concept=Concept(name=concept_token.value),
                roles=tuple(roles),
            )
        except ValidationError as e:
            raise SPLParseError(f"invalid node: {e}", opening.position) from e

    def value(self) -> SemanticValue:
        token = self.peek()
        if token.kind is TokenKind.LPAREN:
            return self.node()
        if token.kind is TokenKind.SYMBOL and not token.value.startswith(":"):
            self.index += 1
            return token.value
        raise SPLParseError("expected role filler", token.position)


def parse_spl(text: str) -> SemanticNode:
    """
    Parse one SPL expression such as (A / |accuse| :AGENT SHE ...)

    Raises:
        SPLParseError: with the character position of the problem
    """
    parser = _Parser(text)
    node = parser.node()
    if parser.index != len(parser.tokens):
        extra = parser.tokens[parser.index]
        raise SPLParseError("unbalanced parentheses: trailing input", extra.position)
    logger.debug(f"Parsed SPL node {node.var} / {node.concept}")
    return node


def _upper_ascii(keyword: str) -> str:
    # str.upper is not reversible for every letter: "ß" becomes "SS"
    return "".join(ch.upper() if ch.isascii() else ch for ch in keyword)


def render_spl(node: SemanticNode) -> str:
    """Render a node back to SPL text"""
    parts = [f"({node.var} / {node.concept}"]
    for role in node.roles:
        filler = role.value
        rendered = render_spl(filler) if isinstance(filler, SemanticNode) else filler
        parts.append(f"{_upper_ascii(role.keyword)} {rendered}")
    return " ".join(parts) + ")"
