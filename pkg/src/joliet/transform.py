"""Lowering pass: rewrite every arrow-foreach into an indexed for loop.

`foreach (v -> node.path) { body }` becomes

    for (idx = 0, idx < #node.path, idx++) {
        v -> node.path[idx];
        body
    }

with a hygienic fresh counter name per loop. The bound `#node.path` sits
in the loop condition, so it is re-evaluated every iteration; a body
that appends to the target lengthens the loop. The alias binding is a
plain statement, so it persists after the loop like any other binding.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from .nodes import (
    AliasBind,
    Binary,
    Count,
    Expr,
    For,
    ForeachArrow,
    ForeachColon,
    If,
    IntLit,
    Path,
    PathRead,
    Program,
    Seq,
    Statement,
    Unary,
    VarRead,
)
from .tokens import GENERATED_PREFIX


@dataclass
class FreshNameSource:
    """Allocator for generated counter names.

    The reserved prefix contains `#`, which no surface identifier may
    contain, so generated names are fresh by construction; checking the
    program's identifier set is a second defense that also keeps repeated
    rewrites of already-lowered source capture-free.
    """

    counter: int = 0
    prefix: str = GENERATED_PREFIX

    def fresh(self, used: set[str]) -> str:
        while True:
            name = f"{self.prefix}{self.counter}"
            self.counter += 1
            if name not in used:
                return name


def fresh_index_name(source: FreshNameSource, identifiers: set[str]) -> str:
    """Allocate a counter name distinct from every known identifier."""
    return source.fresh(identifiers)


def collect_identifiers(program: Program) -> set[str]:
    """Every name occurring anywhere in the program, generated ones included."""
    names: set[str] = set()

    def walk_path(path: Path) -> None:
        for segment in path.segments:
            names.add(segment.name)
            if segment.index is not None:
                walk_expr(segment.index)

    def walk_expr(expr: Expr) -> None:
        if isinstance(expr, VarRead):
            names.add(expr.name)
        elif isinstance(expr, (PathRead, Count)):
            walk_path(expr.path)
        elif isinstance(expr, Binary):
            walk_expr(expr.left)
            walk_expr(expr.right)
        elif isinstance(expr, Unary):
            walk_expr(expr.operand)

    def walk_stmt(stmt: Statement) -> None:
        if isinstance(stmt, Seq):
            for child in stmt.children:
                walk_stmt(child)
        elif isinstance(stmt, For):
            names.add(stmt.init_name)
            names.add(stmt.post_name)
            walk_expr(stmt.init_expr)
            walk_expr(stmt.cond)
            walk_expr(stmt.post_expr)
            walk_stmt(stmt.body)
        elif isinstance(stmt, (ForeachColon, ForeachArrow)):
            names.add(stmt.key_var if isinstance(stmt, ForeachColon)
                      else stmt.alias_var)
            walk_path(stmt.target)
            walk_stmt(stmt.body)
        elif isinstance(stmt, If):
            walk_expr(stmt.cond)
            walk_stmt(stmt.then)
            if stmt.orelse is not None:
                walk_stmt(stmt.orelse)
        else:
            for attr in ("path", "target"):
                path = getattr(stmt, attr, None)
                if path is not None:
                    walk_path(path)
            expr = getattr(stmt, "expr", None)
            if expr is not None:
                walk_expr(expr)
            name = getattr(stmt, "name", None)
            if name is not None:
                names.add(name)

    def walk_type_body(body) -> None:
        names.add(body.root)
        for sub in body.subnodes:
            names.add(sub.name)
            walk_type_body(sub.body)

    for decl in program.types:
        names.add(decl.name)
        walk_type_body(decl.body)
    for idecl in program.interfaces:
        names.add(idecl.name)
        for op in idecl.operations:
            names.add(op.name)
            names.add(op.request_type)
            if op.response_type is not None:
                names.add(op.response_type)
    for port in program.ports:
        names.add(port.name)
        names.add(port.protocol)
        names.update(port.interfaces)
    walk_stmt(program.main)
    return names


def desugar(program: Program) -> Program:
    """Return an equivalent program containing no arrow-foreach statements.

    The deployment part is untouched; every other statement passes
    through structurally unchanged.
    """
    used = collect_identifiers(program)
    source = FreshNameSource()

    def rewrite(stmt: Statement) -> Statement:
        if isinstance(stmt, Seq):
            return replace(stmt, children=tuple(rewrite(c)
                                                for c in stmt.children))
        if isinstance(stmt, ForeachArrow):
            idx = source.fresh(used)
            bind = AliasBind(stmt.alias_var,
                             stmt.target.with_final_index(VarRead(idx)),
                             line=stmt.line, col=stmt.col)
            body = rewrite(stmt.body)
            assert isinstance(body, Seq)
            return For(
                init_name=idx,
                init_expr=IntLit(0),
                cond=Binary("<", VarRead(idx), Count(stmt.target)),
                post_name=idx,
                post_expr=Binary("+", VarRead(idx), IntLit(1)),
                body=replace(body, children=(bind,) + body.children),
                line=stmt.line, col=stmt.col)
        if isinstance(stmt, For):
            body = rewrite(stmt.body)
            assert isinstance(body, Seq)
            return replace(stmt, body=body)
        if isinstance(stmt, ForeachColon):
            body = rewrite(stmt.body)
            assert isinstance(body, Seq)
            return replace(stmt, body=body)
        if isinstance(stmt, If):
            orelse = None if stmt.orelse is None else rewrite(stmt.orelse)
            then = rewrite(stmt.then)
            assert isinstance(then, Seq)
            return replace(stmt, then=then, orelse=orelse)
        return stmt

    main = rewrite(program.main)
    assert isinstance(main, Seq)
    return replace(program, main=main)
