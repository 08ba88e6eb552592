"""Inline documentation pipeline: cursor, categorize, look up, render.

A hover request walks four stages: the token under the cursor is
extracted, categorized as protocol or interface (only deployment-part
tokens qualify), looked up in the documentation database, and the
markdown body is returned with HTML rendering available on demand.

The database merges JSON categorization files (later files override
earlier ones per key) with entries synthesized from the interfaces
declared in the open file; synthesized entries win for interface words.
When the buffer does not parse, a line-based heuristic categorizes the
word under the cursor instead, so hovering keeps working mid-edit.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from enum import Enum
from importlib import resources
from pathlib import Path as FilePath

from .mdrender import render_html
from .nodes import InterfaceDecl, Program
from .parser import ParseError, parse_program
from .tokens import KEYWORDS, LexError, TokenKind, token_at


class Category(Enum):
    PROTOCOL = "protocol"
    INTERFACE = "interface"
    NOT_DOCUMENTABLE = "not-documentable"


@dataclass(frozen=True)
class HoverResult:
    word: str
    category: Category
    markdown: str
    html_available: bool = True


class DocDbError(Exception):
    def __init__(self, path: str, reason: str) -> None:
        super().__init__(f"{path}: {reason}")
        self.path = path
        self.reason = reason


@dataclass
class DocDatabase:
    protocols: dict[str, str] = field(default_factory=dict)
    interfaces: dict[str, str] = field(default_factory=dict)
    source_interfaces: dict[str, str] = field(default_factory=dict)


_ALLOWED_KEYS = ("protocols", "interfaces")


def default_doc_path() -> str:
    """Path of the bundled categorization file."""
    return str(resources.files("joliet") / "default_docs.json")


def _load_file(db: DocDatabase, path: str) -> None:
    try:
        text = FilePath(path).read_text(encoding="utf-8")
    except OSError as err:
        raise DocDbError(path, f"unreadable: {err}") from err
    try:
        data = json.loads(text)
    except json.JSONDecodeError as err:
        raise DocDbError(path, f"invalid JSON: {err}") from err
    if not isinstance(data, dict):
        raise DocDbError(path, "top level must be an object")
    for key, table in data.items():
        if key not in _ALLOWED_KEYS:
            raise DocDbError(path, f"unknown top-level key {key!r}")
        if not isinstance(table, dict):
            raise DocDbError(path, f"{key!r} must map names to strings")
        for name, body in table.items():
            if not isinstance(body, str):
                raise DocDbError(path, f"doc body for {key}.{name} "
                                       "is not a string")
            getattr(db, key)[name] = body


def synthesize_interface_doc(decl: InterfaceDecl) -> str:
    """Generated markdown for an interface declared in the open file."""
    lines = [f"# {decl.name}", "",
             "Interface declared in the current file.", ""]
    if decl.operations:
        lines.append("Operations:")
        lines.append("")
        for op in decl.operations:
            entry = f"- `{op.name}` ({op.kind}): request `{op.request_type}`"
            if op.response_type is not None:
                entry += f", response `{op.response_type}`"
            lines.append(entry)
    else:
        lines.append("No operations declared.")
    return "\n".join(lines)


def load_doc_db(paths: list[str], program: Program | None = None) -> DocDatabase:
    """Merge categorization files in order; later files override earlier.

    With a program supplied, interface entries are synthesized from its
    declarations into a separate table consulted first for interfaces.
    """
    db = DocDatabase()
    for path in paths:
        _load_file(db, path)
    if program is not None:
        for decl in program.interfaces:
            db.source_interfaces[decl.name] = synthesize_interface_doc(decl)
    return db


def categorize(program: Program, source: str, line: int,
               col: int) -> tuple[str, Category]:
    """Classify the token under the cursor.

    Only identifiers sitting exactly where the parser recorded a port's
    protocol, a port's interface reference, or an interface declaration
    name are documentable; keywords, punctuation, literals, and anything
    in the behavior part are not.
    """
    tok = token_at(source, line, col)
    if tok is None:
        return "", Category.NOT_DOCUMENTABLE
    if tok.kind != TokenKind.IDENT:
        return tok.text, Category.NOT_DOCUMENTABLE
    span = (tok.line, tok.col, tok.len)
    for port in program.ports:
        pspan = port.protocol_span
        if span == (pspan.line, pspan.col, pspan.length):
            return tok.text, Category.PROTOCOL
        for ispan in port.interface_spans:
            if span == (ispan.line, ispan.col, ispan.length):
                return tok.text, Category.INTERFACE
    for decl in program.interfaces:
        nspan = decl.name_span
        if span == (nspan.line, nspan.col, nspan.length):
            return tok.text, Category.INTERFACE
    return tok.text, Category.NOT_DOCUMENTABLE


_WORD = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_PROTOCOL_PREFIX = re.compile(r"Protocol\s*:\s*$")
_INTERFACES_PREFIX = re.compile(
    r"Interfaces\s*:\s*(?:[A-Za-z_][A-Za-z0-9_]*\s*,\s*)*$")


def degraded_categorize(source: str, line: int,
                        col: int) -> tuple[str, Category]:
    """Line-based fallback used when the buffer does not parse.

    A word after `Protocol:` is a protocol; a word inside the comma list
    after `Interfaces:` is an interface; everything else, keywords
    included, is not documentable.
    """
    lines = source.split("\n")
    if not (1 <= line <= len(lines)) or col < 1:
        return "", Category.NOT_DOCUMENTABLE
    text = lines[line - 1]
    word_match = None
    for match in _WORD.finditer(text):
        if match.start() < col <= match.end():
            word_match = match
            break
    if word_match is None:
        return "", Category.NOT_DOCUMENTABLE
    word = word_match.group(0)
    if word in KEYWORDS:
        return word, Category.NOT_DOCUMENTABLE
    prefix = text[:word_match.start()]
    if _PROTOCOL_PREFIX.search(prefix):
        return word, Category.PROTOCOL
    if _INTERFACES_PREFIX.search(prefix):
        return word, Category.INTERFACE
    return word, Category.NOT_DOCUMENTABLE


def lookup(db: DocDatabase, word: str,
           category: Category) -> HoverResult | None:
    """Fetch the documentation body for a categorized word, if any."""
    if category == Category.PROTOCOL:
        body = db.protocols.get(word)
    elif category == Category.INTERFACE:
        body = db.source_interfaces.get(word)
        if body is None:
            body = db.interfaces.get(word)
    else:
        return None
    if not body:
        return None
    return HoverResult(word, category, body)


def hover(program: Program | None, source: str, line: int, col: int,
          db: DocDatabase) -> HoverResult | None:
    """Full pipeline; None when nothing is documented at the cursor."""
    if program is None:
        word, category = degraded_categorize(source, line, col)
    else:
        word, category = categorize(program, source, line, col)
    if category == Category.NOT_DOCUMENTABLE:
        return None
    return lookup(db, word, category)


def hover_source(source: str, line: int, col: int,
                 doc_paths: list[str]) -> HoverResult | None:
    """Convenience wrapper: parse if possible, degrade if not, then hover."""
    program: Program | None
    try:
        program = parse_program(source)
    except (ParseError, LexError):
        program = None
    db = load_doc_db(doc_paths, program)
    return hover(program, source, line, col, db)


__all__ = [
    "Category",
    "DocDatabase",
    "DocDbError",
    "HoverResult",
    "categorize",
    "default_doc_path",
    "degraded_categorize",
    "hover",
    "hover_source",
    "load_doc_db",
    "lookup",
    "render_html",
    "synthesize_interface_doc",
]
