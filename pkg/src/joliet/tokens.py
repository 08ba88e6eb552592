"""Lexer for `.jol` sources: position-aware tokens and cursor lookup."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum


class TokenKind(Enum):
    IDENT = "identifier"
    KEYWORD = "keyword"
    STRING = "string-literal"
    INT = "int-literal"
    PUNCT = "punctuation"
    ARROW = "arrow"
    COLON = "colon"
    HASH = "hash"


KEYWORDS = frozenset({
    "type", "interface", "inputPort", "outputPort",
    "Location", "Protocol", "Interfaces",
    "RequestResponse", "OneWay",
    "main", "for", "foreach", "if", "else", "true", "false",
    "string", "int", "bool", "double", "void", "undefined",
})

NATIVE_TYPES = ("string", "int", "bool", "double", "void", "undefined")

# Prefix of rewriter-generated counter names. `#` cannot appear in a user
# identifier, so generated names never collide with user code; the lexer
# still accepts `#fe_<digits>` so that rewritten source re-parses.
GENERATED_PREFIX = "#fe_"


@dataclass(frozen=True)
class Token:
    kind: TokenKind
    text: str
    line: int  # 1-based
    col: int   # 1-based column of the first character
    len: int

    @property
    def span(self) -> tuple[int, int, int]:
        return (self.line, self.col, self.len)


class LexError(Exception):
    def __init__(self, message: str, line: int, col: int) -> None:
        super().__init__(f"{line}:{col}: {message}")
        self.message = message
        self.line = line
        self.col = col


def is_generated_name(name: str) -> bool:
    """True for rewriter-generated counter names (`#fe_` plus digits)."""
    tail = name[len(GENERATED_PREFIX):]
    return name.startswith(GENERATED_PREFIX) and tail.isdigit()


_TWO_CHAR_PUNCT = ("++", "<=", ">=", "==", "!=", "&&", "||")
_SINGLE_PUNCT = frozenset("+-*/<>=!.,;{}[]()@")
_IDENT_START = frozenset("abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ_")
_IDENT_CHAR = _IDENT_START | frozenset("0123456789")


def tokenize(source: str) -> list[Token]:
    """Split source into tokens, skipping whitespace and `//` comments.

    Token texts are raw source slices, so concatenating them with the
    skipped gaps reproduces the input exactly.
    """
    tokens: list[Token] = []
    i = 0
    line = 1
    col = 1
    n = len(source)

    def push(kind: TokenKind, text: str) -> None:
        tokens.append(Token(kind, text, line, col, len(text)))

    while i < n:
        ch = source[i]
        if ch == "\n":
            i += 1
            line += 1
            col = 1
            continue
        if ch in " \t\r":
            i += 1
            col += 1
            continue
        if ch == "/" and source.startswith("//", i):
            while i < n and source[i] != "\n":
                i += 1
                col += 1
            continue
        if ch == '"':
            j = i + 1
            while j < n and source[j] not in ('"', "\n"):
                if source[j] == "\\":
                    if j + 1 < n and source[j + 1] in ('"', "\\"):
                        j += 2
                        continue
                    raise LexError("unsupported escape in string literal",
                                   line, col + (j - i))
                j += 1
            if j >= n or source[j] == "\n":
                raise LexError("unterminated string literal", line, col)
            push(TokenKind.STRING, source[i:j + 1])
            col += j + 1 - i
            i = j + 1
            continue
        if ch.isdigit():
            j = i
            while j < n and source[j].isdigit():
                j += 1
            push(TokenKind.INT, source[i:j])
            col += j - i
            i = j
            continue
        if ch in _IDENT_START:
            j = i
            while j < n and source[j] in _IDENT_CHAR:
                j += 1
            text = source[i:j]
            push(TokenKind.KEYWORD if text in KEYWORDS else TokenKind.IDENT, text)
            col += j - i
            i = j
            continue
        if ch == "#":
            if (source.startswith(GENERATED_PREFIX, i)
                    and i + 4 < n and source[i + 4].isdigit()):
                j = i + 4
                while j < n and source[j].isdigit():
                    j += 1
                push(TokenKind.IDENT, source[i:j])
                col += j - i
                i = j
                continue
            push(TokenKind.HASH, "#")
            i += 1
            col += 1
            continue
        if ch == ":":
            push(TokenKind.COLON, ":")
            i += 1
            col += 1
            continue
        if source.startswith("->", i):
            push(TokenKind.ARROW, "->")
            i += 2
            col += 2
            continue
        two = source[i:i + 2]
        if two in _TWO_CHAR_PUNCT:
            push(TokenKind.PUNCT, two)
            i += 2
            col += 2
            continue
        if ch in _SINGLE_PUNCT:
            push(TokenKind.PUNCT, ch)
            i += 1
            col += 1
            continue
        raise LexError(f"illegal character {ch!r}", line, col)

    return tokens


def token_at(source: str, line: int, col: int) -> Token | None:
    """Return the token whose span contains (line, col), if any.

    Positions on whitespace, comments, past the end of a line, or in
    source that does not lex yield None.
    """
    if line < 1 or col < 1:
        return None
    try:
        tokens = tokenize(source)
    except LexError:
        return None
    for tok in tokens:
        if tok.line == line and tok.col <= col < tok.col + tok.len:
            return tok
    return None


def string_value(text: str) -> str:
    """Decode a string literal's raw text (quotes and escapes included)."""
    body = text[1:-1]
    out: list[str] = []
    i = 0
    while i < len(body):
        if body[i] == "\\":
            out.append(body[i + 1])
            i += 2
        else:
            out.append(body[i])
            i += 1
    return "".join(out)


def escape_string(value: str) -> str:
    """Encode a scalar string as a quoted source literal."""
    return '"' + value.replace("\\", "\\\\").replace('"', '\\"') + '"'
