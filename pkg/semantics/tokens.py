"""S-expression lexer and reader shared by SPL inputs and grammar files"""
import logging
from dataclasses import dataclass
from enum import Enum
from typing import Union

logger = logging.getLogger(__name__)


class TokenKind(str, Enum):
    """Kinds of lexical tokens"""

    LPAREN = "("
    RPAREN = ")"
    SLASH = "/"
    STRING = "string"
    CONCEPT = "concept"
    SYMBOL = "symbol"


@dataclass(frozen=True)
class Token:
    kind: TokenKind
    value: str
    position: int


class TokenizeError(ValueError):
    """Raised on unterminated strings or concept names"""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


_DELIMITERS = set("()\"|;")


def tokenize(text: str, split_slash: bool = False) -> list[Token]:
    """
    Split text into tokens

    Args:
        text: source text
        split_slash: treat '/' as its own token (SPL) instead of a symbol character

    Returns:
        Tokens with their character offsets
    """
    tokens: list[Token] = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch == ";":
            while i < n and text[i] != "\n":
                i += 1
        elif ch == "(":
            tokens.append(Token(TokenKind.LPAREN, ch, i))
            i += 1
        elif ch == ")":
            tokens.append(Token(TokenKind.RPAREN, ch, i))
            i += 1
        elif ch == "/" and split_slash:
            tokens.append(Token(TokenKind.SLASH, ch, i))
            i += 1
        elif ch in "\"|":
            end = text.find(ch, i + 1)
            if end < 0:
                what = "string" if ch == '"' else "concept name"
                raise TokenizeError(f"unterminated {what}", i)
            kind = TokenKind.STRING if ch == '"' else TokenKind.CONCEPT
            tokens.append(Token(kind, text[i + 1 : end], i))
            i = end + 1
        else:
            start = i
            while (
                i < n
                and not text[i].isspace()
                and text[i] not in _DELIMITERS
                and not (split_slash and text[i] == "/")
            ):
                i += 1
            tokens.append(Token(TokenKind.SYMBOL, text[start:i], start))
    return tokens


@dataclass(frozen=True)
class Form:
    """A parenthesized list with the position of its opening parenthesis"""

    items: tuple["Expr", ...]
    position: int


Expr = Union[Form, Token]


def read_forms(text: str) -> list[Form]:
    """Read all top-level parenthesized forms of a file"""
    tokens = tokenize(text)
    forms: list[Form] = []
    stack: list[tuple[int, list[Expr]]] = []
    for token in tokens:
        if token.kind is TokenKind.LPAREN:
            stack.append((token.position, []))
        elif token.kind is TokenKind.RPAREN:
            if not stack:
                raise TokenizeError("unbalanced ')'", token.position)
            position, items = stack.pop()
            form = Form(tuple(items), position)
            if stack:
                stack[-1][1].append(form)
            else:
                forms.append(form)
        else:
            if not stack:
                raise TokenizeError(f"atom {token.value!r} outside a form", token.position)
            stack[-1][1].append(token)
    if stack:
        raise TokenizeError("unbalanced '('", stack[-1][0])
    logger.debug(f"Read {len(forms)} top-level forms")
    return forms


def line_of(text: str, position: int) -> int:
    """1-based line number of a character offset"""
    return text.count("\n", 0, position) + 1
