"""joliet: a miniature service-orchestration language toolchain.

Parsing, pretty-printing, a tree-structured value store with dynamic
aliases, an arrow-foreach lowering pass, a tree-walking interpreter, an
inline documentation pipeline with markdown rendering, and a CLI plus
HTTP service exposing it all.
"""

from .docengine import (
    Category,
    DocDatabase,
    DocDbError,
    HoverResult,
    hover,
    hover_source,
    load_doc_db,
)
from .interp import (
    BudgetExhausted,
    ExecOutcome,
    RuntimeFault,
    execute,
    run,
)
from .mdrender import render_html
from .parser import ParseError, parse_program
from .printer import pretty_print
from .tokens import LexError, Token, TokenKind, token_at, tokenize
from .transform import desugar
from .valuetree import Store

__all__ = [
    "BudgetExhausted",
    "Category",
    "DocDatabase",
    "DocDbError",
    "ExecOutcome",
    "HoverResult",
    "LexError",
    "ParseError",
    "RuntimeFault",
    "Store",
    "Token",
    "TokenKind",
    "desugar",
    "execute",
    "hover",
    "hover_source",
    "load_doc_db",
    "parse_program",
    "pretty_print",
    "render_html",
    "run",
    "token_at",
    "tokenize",
]

__version__ = "0.1.0"
