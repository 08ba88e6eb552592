"""Recursive-descent parser producing a Program AST.

The grammar splits a source file into deployment declarations (types,
interfaces, ports, in any order) followed by a single `main` block.
Statements inside blocks are separated by `;` with an optional trailing
separator. See docs/grammar.md for the full EBNF.
"""

from __future__ import annotations

from .nodes import (
    AliasBind,
    Assign,
    Binary,
    BoolLit,
    Count,
    Expr,
    For,
    ForeachArrow,
    ForeachColon,
    If,
    InterfaceDecl,
    IntLit,
    OperationDecl,
    Path,
    PathRead,
    PathSegment,
    PortDecl,
    Println,
    Program,
    Seq,
    Span,
    Statement,
    StringLit,
    SubnodeDecl,
    TypeBody,
    TypeDecl,
    Unary,
    VarRead,
)
from .tokens import Token, TokenKind, string_value, tokenize


class ParseError(Exception):
    def __init__(self, line: int, col: int, expected: str, found: str) -> None:
        super().__init__(f"{line}:{col}: expected {expected}, found {found}")
        self.line = line
        self.col = col
        self.expected = expected
        self.found = found

    @property
    def message(self) -> str:
        return f"expected {self.expected}, found {self.found}"


class _Parser:
    def __init__(self, tokens: list[Token]) -> None:
        self.tokens = tokens
        self.pos = 0

    # ── Token access ─────────────────────────────────────────────

    def _current(self) -> Token | None:
        if self.pos < len(self.tokens):
            return self.tokens[self.pos]
        return None

    def _describe(self, tok: Token | None) -> str:
        return "end of input" if tok is None else repr(tok.text)

    def _where(self, tok: Token | None) -> tuple[int, int]:
        if tok is not None:
            return tok.line, tok.col
        if self.tokens:
            last = self.tokens[-1]
            return last.line, last.col + last.len
        return 1, 1

    def _fail(self, expected: str, tok: Token | None = None) -> ParseError:
        if tok is None:
            tok = self._current()
        line, col = self._where(tok)
        return ParseError(line, col, expected, self._describe(tok))

    def _advance(self) -> Token:
        tok = self._current()
        if tok is None:
            raise self._fail("a token")
        self.pos += 1
        return tok

    def _at_text(self, text: str) -> bool:
        tok = self._current()
        return tok is not None and tok.text == text

    def _at_kind(self, kind: TokenKind) -> bool:
        tok = self._current()
        return tok is not None and tok.kind == kind

    def _eat(self, text: str) -> bool:
        if self._at_text(text):
            self.pos += 1
            return True
        return False

    def _expect_text(self, text: str) -> Token:
        tok = self._current()
        if tok is None or tok.text != text:
            raise self._fail(f"'{text}'", tok)
        self.pos += 1
        return tok

    def _expect_ident(self, what: str = "an identifier") -> Token:
        tok = self._current()
        if tok is None or tok.kind != TokenKind.IDENT:
            raise self._fail(what, tok)
        self.pos += 1
        return tok

    # ── Program ──────────────────────────────────────────────────

    def parse_program(self) -> Program:
        types: list[TypeDecl] = []
        interfaces: list[InterfaceDecl] = []
        ports: list[PortDecl] = []
        while True:
            tok = self._current()
            if tok is None:
                raise self._fail("a declaration or 'main'")
            if tok.text == "type":
                types.append(self._parse_type_decl())
            elif tok.text == "interface":
                interfaces.append(self._parse_interface_decl())
            elif tok.text in ("inputPort", "outputPort"):
                ports.append(self._parse_port_decl())
            elif tok.text == "main":
                break
            else:
                raise self._fail("'type', 'interface', 'inputPort', "
                                 "'outputPort' or 'main'", tok)
        self._expect_text("main")
        main = self._parse_block()
        trailing = self._current()
        if trailing is not None:
            raise self._fail("end of input", trailing)
        program = Program(tuple(types), tuple(interfaces), tuple(ports), main)
        self._validate(program)
        return program

    def _validate(self, program: Program) -> None:
        for label, decls in (("type", program.types),
                             ("interface", program.interfaces),
                             ("port", program.ports)):
            seen: set[str] = set()
            for decl in decls:
                if decl.name in seen:
                    span = getattr(decl, "name_span", None)
                    line, col = (span.line, span.col) if span else (1, 1)
                    raise ParseError(line, col, f"a unique {label} name",
                                     f"duplicate '{decl.name}'")
                seen.add(decl.name)
        declared = {decl.name for decl in program.interfaces}
        for port in program.ports:
            for name, span in zip(port.interfaces, port.interface_spans):
                if name not in declared:
                    raise ParseError(span.line, span.col,
                                     "a declared interface name",
                                     f"'{name}'")

    # ── Deployment declarations ──────────────────────────────────

    def _parse_native_type(self) -> str:
        tok = self._current()
        if tok is None or tok.text not in (
                "string", "int", "bool", "double", "void", "undefined"):
            raise self._fail("a native type name", tok)
        self.pos += 1
        return tok.text

    def _parse_type_body(self) -> TypeBody:
        root = self._parse_native_type()
        subnodes: list[SubnodeDecl] = []
        if self._eat("{"):
            while not self._at_text("}"):
                subnodes.append(self._parse_subnode())
            self._expect_text("}")
        return TypeBody(root, tuple(subnodes))

    def _parse_subnode(self) -> SubnodeDecl:
        self._expect_text(".")
        name_tok = self._expect_ident("a subnode name")
        card_min, card_max = 1, 1
        if self._eat("["):
            min_tok = self._current()
            if min_tok is None or min_tok.kind != TokenKind.INT:
                raise self._fail("a minimum cardinality", min_tok)
            self.pos += 1
            card_min = int(min_tok.text)
            self._expect_text(",")
            max_tok = self._current()
            if max_tok is not None and max_tok.text == "*":
                self.pos += 1
                card_max = None
            elif max_tok is not None and max_tok.kind == TokenKind.INT:
                self.pos += 1
                card_max = int(max_tok.text)
            else:
                raise self._fail("a maximum cardinality or '*'", max_tok)
            self._expect_text("]")
        self._expect_text(":")
        body = self._parse_type_body()
        return SubnodeDecl(name_tok.text, card_min, card_max, body)

    def _parse_type_decl(self) -> TypeDecl:
        self._expect_text("type")
        name_tok = self._expect_ident("a type name")
        self._expect_text(":")
        body = self._parse_type_body()
        return TypeDecl(name_tok.text, body)

    def _parse_interface_decl(self) -> InterfaceDecl:
        self._expect_text("interface")
        name_tok = self._expect_ident("an interface name")
        self._expect_text("{")
        operations: list[OperationDecl] = []
        while not self._at_text("}"):
            kind_tok = self._current()
            if kind_tok is None or kind_tok.text not in ("RequestResponse",
                                                         "OneWay"):
                raise self._fail("'RequestResponse' or 'OneWay'", kind_tok)
            self.pos += 1
            self._expect_text(":")
            while True:
                operations.append(self._parse_operation(kind_tok.text))
                if not self._eat(","):
                    break
        self._expect_text("}")
        seen: set[str] = set()
        for op in operations:
            if op.name in seen:
                raise ParseError(name_tok.line, name_tok.col,
                                 "unique operation names",
                                 f"duplicate '{op.name}'")
            seen.add(op.name)
        return InterfaceDecl(
            name_tok.text, tuple(operations),
            name_span=Span(name_tok.line, name_tok.col, name_tok.len))

    def _parse_type_name(self) -> str:
        tok = self._current()
        if tok is not None and (tok.kind == TokenKind.IDENT
                                or tok.text in ("string", "int", "bool",
                                                "double", "void",
                                                "undefined")):
            self.pos += 1
            return tok.text
        raise self._fail("a type name", tok)

    def _parse_operation(self, kind: str) -> OperationDecl:
        name_tok = self._expect_ident("an operation name")
        self._expect_text("(")
        request = self._parse_type_name()
        self._expect_text(")")
        response: str | None = None
        if kind == "RequestResponse":
            self._expect_text("(")
            response = self._parse_type_name()
            self._expect_text(")")
        return OperationDecl(name_tok.text, kind, request, response)

    def _parse_port_decl(self) -> PortDecl:
        direction_tok = self._advance()
        direction = "input" if direction_tok.text == "inputPort" else "output"
        name_tok = self._expect_ident("a port name")
        self._expect_text("{")
        self._expect_text("Location")
        self._expect_text(":")
        loc_tok = self._current()
        if loc_tok is None or loc_tok.kind != TokenKind.STRING:
            raise self._fail("a location URI string", loc_tok)
        self.pos += 1
        self._expect_text("Protocol")
        self._expect_text(":")
        proto_tok = self._expect_ident("a protocol name")
        self._expect_text("Interfaces")
        self._expect_text(":")
        iface_names: list[str] = []
        iface_spans: list[Span] = []
        while True:
            iface_tok = self._expect_ident("an interface name")
            iface_names.append(iface_tok.text)
            iface_spans.append(Span(iface_tok.line, iface_tok.col,
                                    iface_tok.len))
            if not self._eat(","):
                break
        self._expect_text("}")
        return PortDecl(
            direction, name_tok.text, string_value(loc_tok.text),
            proto_tok.text, tuple(iface_names),
            protocol_span=Span(proto_tok.line, proto_tok.col, proto_tok.len),
            interface_spans=tuple(iface_spans))

    # ── Statements ───────────────────────────────────────────────

    def _parse_block(self) -> Seq:
        brace = self._expect_text("{")
        children: list[Statement] = []
        while not self._at_text("}"):
            children.append(self._parse_statement())
            if not self._eat(";"):
                break
        self._expect_text("}")
        return Seq(tuple(children), line=brace.line, col=brace.col)

    def _parse_statement(self) -> Statement:
        tok = self._current()
        if tok is None:
            raise self._fail("a statement")
        if tok.text == "for":
            return self._parse_for()
        if tok.text == "foreach":
            return self._parse_foreach()
        if tok.text == "if":
            return self._parse_if()
        if tok.kind == TokenKind.IDENT:
            if tok.text == "println":
                nxt = self.tokens[self.pos + 1] if self.pos + 1 < len(self.tokens) else None
                if nxt is not None and nxt.text in ("(", "@"):
                    return self._parse_println()
            return self._parse_assign_or_alias()
        raise self._fail("a statement", tok)

    def _parse_println(self) -> Println:
        tok = self._expect_ident()
        if self._eat("@"):
            self._expect_ident("a service name")
        self._expect_text("(")
        expr = self._parse_expr()
        self._expect_text(")")
        return Println(expr, line=tok.line, col=tok.col)

    def _parse_assign_or_alias(self) -> Statement:
        start = self._current()
        assert start is not None
        path, index_spans = self._parse_path()
        if self._at_kind(TokenKind.ARROW):
            self.pos += 1
            if len(path.segments) != 1 or path.segments[0].index is not None:
                raise ParseError(start.line, start.col,
                                 "a bare alias name before '->'",
                                 repr(start.text))
            target, _ = self._parse_path()
            return AliasBind(path.root_name, target,
                             line=start.line, col=start.col)
        self._expect_text("=")
        expr = self._parse_expr()
        return Assign(path, expr, line=start.line, col=start.col)

    def _parse_for(self) -> For:
        kw = self._expect_text("for")
        self._expect_text("(")
        init_tok = self._expect_ident("a loop counter name")
        self._expect_text("=")
        init_expr = self._parse_expr()
        self._expect_text(",")
        cond = self._parse_expr()
        self._expect_text(",")
        post_tok = self._expect_ident("a loop counter name")
        self._expect_text("++")
        self._expect_text(")")
        body = self._parse_block()
        post_expr = Binary("+", VarRead(post_tok.text), IntLit(1))
        return For(init_tok.text, init_expr, cond, post_tok.text, post_expr,
                   body, line=kw.line, col=kw.col)

    def _parse_foreach(self) -> Statement:
        kw = self._expect_text("foreach")
        self._expect_text("(")
        var_tok = self._expect_ident("an iteration variable")
        sep = self._current()
        if sep is not None and sep.kind == TokenKind.COLON:
            self.pos += 1
            target, _ = self._parse_path()
            self._expect_text(")")
            body = self._parse_block()
            return ForeachColon(var_tok.text, target, body,
                                line=kw.line, col=kw.col)
        if sep is not None and sep.kind == TokenKind.ARROW:
            self.pos += 1
            target, index_spans = self._parse_path()
            if target.final.index is not None:
                span = index_spans[-1]
                assert span is not None
                raise ParseError(span.line, span.col,
                                 "a node path (no index on the final "
                                 "segment) as the foreach target",
                                 "an indexed value")
            self._expect_text(")")
            body = self._parse_block()
            return ForeachArrow(var_tok.text, target, body,
                                line=kw.line, col=kw.col)
        raise self._fail("':' or '->'", sep)

    def _parse_if(self) -> If:
        kw = self._expect_text("if")
        self._expect_text("(")
        cond = self._parse_expr()
        self._expect_text(")")
        then = self._parse_block()
        orelse: Statement | None = None
        if self._eat("else"):
            if self._at_text("if"):
                orelse = self._parse_if()
            else:
                orelse = self._parse_block()
        return If(cond, then, orelse, line=kw.line, col=kw.col)

    # ── Paths ────────────────────────────────────────────────────

    def _parse_path(self) -> tuple[Path, list[Span | None]]:
        """Parse a path; also return the span of each segment's `[`."""
        segments: list[PathSegment] = []
        index_spans: list[Span | None] = []
        while True:
            name_tok = self._expect_ident("a node name")
            index: Expr | None = None
            span: Span | None = None
            if self._at_text("["):
                bracket = self._advance()
                span = Span(bracket.line, bracket.col, bracket.len)
                index = self._parse_expr()
                self._expect_text("]")
            segments.append(PathSegment(name_tok.text, index))
            index_spans.append(span)
            if not self._eat("."):
                break
        return Path(tuple(segments)), index_spans

    # ── Expressions ──────────────────────────────────────────────

    _BINARY_LEVELS = (("||",), ("&&",), ("==", "!="),
                      ("<", "<=", ">", ">="), ("+", "-"), ("*", "/"))

    def _parse_expr(self, level: int = 0) -> Expr:
        if level >= len(self._BINARY_LEVELS):
            return self._parse_unary()
        ops = self._BINARY_LEVELS[level]
        left = self._parse_expr(level + 1)
        while True:
            tok = self._current()
            if tok is None or tok.text not in ops:
                return left
            self.pos += 1
            right = self._parse_expr(level + 1)
            left = Binary(tok.text, left, right)

    def _parse_unary(self) -> Expr:
        tok = self._current()
        if tok is not None and tok.text in ("!", "-"):
            self.pos += 1
            return Unary(tok.text, self._parse_unary())
        return self._parse_atom()

    def _parse_atom(self) -> Expr:
        tok = self._current()
        if tok is None:
            raise self._fail("an expression")
        if tok.kind == TokenKind.INT:
            self.pos += 1
            return IntLit(int(tok.text))
        if tok.kind == TokenKind.STRING:
            self.pos += 1
            return StringLit(string_value(tok.text))
        if tok.text in ("true", "false"):
            self.pos += 1
            return BoolLit(tok.text == "true")
        if tok.kind == TokenKind.HASH:
            self.pos += 1
            path, index_spans = self._parse_path()
            if path.final.index is not None:
                span = index_spans[-1]
                assert span is not None
                raise ParseError(span.line, span.col,
                                 "a node path (no index on the final "
                                 "segment) after '#'",
                                 "an indexed value")
            return Count(path)
        if tok.text == "(":
            self.pos += 1
            expr = self._parse_expr()
            self._expect_text(")")
            return expr
        if tok.kind == TokenKind.IDENT:
            nxt = self.tokens[self.pos + 1] if self.pos + 1 < len(self.tokens) else None
            if nxt is not None and nxt.text in (".", "["):
                path, _ = self._parse_path()
                return PathRead(path)
            self.pos += 1
            return VarRead(tok.text)
        raise self._fail("an expression", tok)


def parse_program(source: str) -> Program:
    """Parse a complete source file into a Program.

    Raises ParseError on grammar or validation violations and LexError
    on malformed tokens.
    """
    return _Parser(tokenize(source)).parse_program()
