"""Deterministic pretty-printer; its output re-parses to an equal AST."""

from __future__ import annotations

from .nodes import (
    AliasBind,
    Assign,
    Binary,
    BoolLit,
    Count,
    DoubleLit,
    Expr,
    For,
    ForeachArrow,
    ForeachColon,
    If,
    InterfaceDecl,
    IntLit,
    Path,
    PathRead,
    PortDecl,
    Println,
    Program,
    Seq,
    Statement,
    StringLit,
    TypeBody,
    TypeDecl,
    Unary,
    VarRead,
)
from .tokens import escape_string

_INDENT = "    "

_PREC = {
    "||": 1, "&&": 2,
    "==": 3, "!=": 3,
    "<": 4, "<=": 4, ">": 4, ">=": 4,
    "+": 5, "-": 5,
    "*": 6, "/": 6,
}
_UNARY_PREC = 7
_ATOM_PREC = 8


def format_path(path: Path) -> str:
    parts = []
    for segment in path.segments:
        if segment.index is None:
            parts.append(segment.name)
        else:
            parts.append(f"{segment.name}[{format_expr(segment.index)}]")
    return ".".join(parts)


def _expr_prec(expr: Expr) -> int:
    if isinstance(expr, Binary):
        return _PREC[expr.op]
    if isinstance(expr, Unary):
        return _UNARY_PREC
    return _ATOM_PREC


def format_expr(expr: Expr) -> str:
    if isinstance(expr, IntLit):
        return str(expr.value)
    if isinstance(expr, BoolLit):
        return "true" if expr.value else "false"
    if isinstance(expr, DoubleLit):
        return repr(expr.value)
    if isinstance(expr, StringLit):
        return escape_string(expr.value)
    if isinstance(expr, VarRead):
        return expr.name
    if isinstance(expr, PathRead):
        return format_path(expr.path)
    if isinstance(expr, Count):
        return f"#{format_path(expr.path)}"
    if isinstance(expr, Unary):
        operand = format_expr(expr.operand)
        if _expr_prec(expr.operand) < _UNARY_PREC:
            operand = f"({operand})"
        return f"{expr.op}{operand}"
    if isinstance(expr, Binary):
        prec = _PREC[expr.op]
        left = format_expr(expr.left)
        if _expr_prec(expr.left) < prec:
            left = f"({left})"
        right = format_expr(expr.right)
        if _expr_prec(expr.right) <= prec:
            right = f"({right})"
        return f"{left} {expr.op} {right}"
    raise TypeError(f"unknown expression node: {expr!r}")


def _format_block(body: Seq, depth: int) -> str:
    children: list[Statement] = []
    stack = list(body.children)
    while stack:
        stmt = stack.pop(0)
        if isinstance(stmt, Seq):
            stack = list(stmt.children) + stack
        else:
            children.append(stmt)
    if not children:
        return "{ }"
    inner = _INDENT * (depth + 1)
    lines = (";\n").join(inner + _format_statement(s, depth + 1)
                         for s in children)
    return "{\n" + lines + "\n" + _INDENT * depth + "}"


def _format_statement(stmt: Statement, depth: int) -> str:
    if isinstance(stmt, Assign):
        return f"{format_path(stmt.path)} = {format_expr(stmt.expr)}"
    if isinstance(stmt, AliasBind):
        return f"{stmt.name} -> {format_path(stmt.target)}"
    if isinstance(stmt, Println):
        return f"println({format_expr(stmt.expr)})"
    if isinstance(stmt, For):
        header = (f"for ({stmt.init_name} = {format_expr(stmt.init_expr)}, "
                  f"{format_expr(stmt.cond)}, {stmt.post_name}++)")
        return f"{header} {_format_block(stmt.body, depth)}"
    if isinstance(stmt, ForeachColon):
        return (f"foreach ({stmt.key_var} : {format_path(stmt.target)}) "
                f"{_format_block(stmt.body, depth)}")
    if isinstance(stmt, ForeachArrow):
        return (f"foreach ({stmt.alias_var} -> {format_path(stmt.target)}) "
                f"{_format_block(stmt.body, depth)}")
    if isinstance(stmt, If):
        text = (f"if ({format_expr(stmt.cond)}) "
                f"{_format_block(stmt.then, depth)}")
        if isinstance(stmt.orelse, If):
            text += f" else {_format_statement(stmt.orelse, depth)}"
        elif isinstance(stmt.orelse, Seq):
            text += f" else {_format_block(stmt.orelse, depth)}"
        return text
    raise TypeError(f"unknown statement node: {stmt!r}")


def _format_type_body(body: TypeBody, depth: int) -> str:
    if not body.subnodes:
        return body.root
    inner = _INDENT * (depth + 1)
    lines = []
    for sub in body.subnodes:
        if (sub.card_min, sub.card_max) == (1, 1):
            card = ""
        else:
            upper = "*" if sub.card_max is None else str(sub.card_max)
            card = f"[{sub.card_min},{upper}]"
        lines.append(f"{inner}.{sub.name}{card}: "
                     f"{_format_type_body(sub.body, depth + 1)}")
    return (body.root + " {\n" + "\n".join(lines) + "\n"
            + _INDENT * depth + "}")


def _format_type_decl(decl: TypeDecl) -> str:
    return f"type {decl.name}: {_format_type_body(decl.body, 0)}"


def _format_interface_decl(decl: InterfaceDecl) -> str:
    lines = [f"interface {decl.name} {{"]
    ops = list(decl.operations)
    i = 0
    while i < len(ops):
        kind = ops[i].kind
        group = []
        while i < len(ops) and ops[i].kind == kind:
            op = ops[i]
            sig = f"{op.name}({op.request_type})"
            if op.response_type is not None:
                sig += f"({op.response_type})"
            group.append(sig)
            i += 1
        lines.append(f"{_INDENT}{kind}: {', '.join(group)}")
    lines.append("}")
    return "\n".join(lines)


def _format_port_decl(decl: PortDecl) -> str:
    keyword = "inputPort" if decl.direction == "input" else "outputPort"
    ifaces = ", ".join(decl.interfaces)
    return (f"{keyword} {decl.name} {{\n"
            f"{_INDENT}Location: {escape_string(decl.location)}\n"
            f"{_INDENT}Protocol: {decl.protocol}\n"
            f"{_INDENT}Interfaces: {ifaces}\n"
            f"}}")


def pretty_print(program: Program) -> str:
    """Render a Program as canonical source text (trailing newline)."""
    sections = []
    for decl in program.types:
        sections.append(_format_type_decl(decl))
    for idecl in program.interfaces:
        sections.append(_format_interface_decl(idecl))
    for port in program.ports:
        sections.append(_format_port_decl(port))
    sections.append(f"main {_format_block(program.main, 0)}")
    return "\n\n".join(sections) + "\n"
