"""AST definitions: deployment declarations, behavior statements, expressions.

All nodes are frozen dataclasses. Source positions and token spans are
carried with compare=False so equality is structural (position-agnostic),
which is what the parse/print round-trip tests rely on.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

Scalar = str | int | bool | float


@dataclass(frozen=True)
class Span:
    line: int
    col: int
    length: int


# ── Expressions ──────────────────────────────────────────────────


class Expr:
    """Base class for expressions."""


@dataclass(frozen=True)
class StringLit(Expr):
    value: str


@dataclass(frozen=True)
class IntLit(Expr):
    value: int


@dataclass(frozen=True)
class BoolLit(Expr):
    value: bool


@dataclass(frozen=True)
class DoubleLit(Expr):
    value: float


@dataclass(frozen=True)
class VarRead(Expr):
    """A bare name: a loop counter, an alias, or a single-node path."""
    name: str


@dataclass(frozen=True)
class PathSegment:
    name: str
    index: Expr | None = None


@dataclass(frozen=True)
class Path:
    """A dotted variable path; segments[0] is the root."""

    segments: tuple[PathSegment, ...]

    @property
    def root_name(self) -> str:
        return self.segments[0].name

    @property
    def final(self) -> PathSegment:
        return self.segments[-1]

    def with_final_index(self, index: Expr) -> Path:
        head = self.segments[:-1]
        segment = replace(self.segments[-1], index=index)
        return Path(head + (segment,))


@dataclass(frozen=True)
class PathRead(Expr):
    path: Path


@dataclass(frozen=True)
class Count(Expr):
    """`#path`: number of values under the path's final node name."""
    path: Path


@dataclass(frozen=True)
class Binary(Expr):
    op: str
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Unary(Expr):
    op: str
    operand: Expr


# ── Statements ───────────────────────────────────────────────────


class Statement:
    """Base class for behavior statements."""


@dataclass(frozen=True)
class Assign(Statement):
    path: Path
    expr: Expr
    line: int = field(default=0, compare=False)
    col: int = field(default=0, compare=False)


@dataclass(frozen=True)
class AliasBind(Statement):
    """`name -> path`: bind name as a dynamic alias for path."""
    name: str
    target: Path
    line: int = field(default=0, compare=False)
    col: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Println(Statement):
    expr: Expr
    line: int = field(default=0, compare=False)
    col: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Seq(Statement):
    children: tuple[Statement, ...]
    line: int = field(default=0, compare=False)
    col: int = field(default=0, compare=False)


@dataclass(frozen=True)
class For(Statement):
    """`for (name = e, cond, name++)`; post is stored as (name, name + 1)."""
    init_name: str
    init_expr: Expr
    cond: Expr
    post_name: str
    post_expr: Expr
    body: Seq
    line: int = field(default=0, compare=False)
    col: int = field(default=0, compare=False)


@dataclass(frozen=True)
class ForeachColon(Statement):
    """`foreach (key : path)`: iterate the child names of a node."""
    key_var: str
    target: Path
    body: Seq
    line: int = field(default=0, compare=False)
    col: int = field(default=0, compare=False)


@dataclass(frozen=True)
class ForeachArrow(Statement):
    """`foreach (alias -> path)`: iterate the values of a node via an alias.

    The target's final segment never carries an index (parser-enforced).
    """
    alias_var: str
    target: Path
    body: Seq
    line: int = field(default=0, compare=False)
    col: int = field(default=0, compare=False)


@dataclass(frozen=True)
class If(Statement):
    cond: Expr
    then: Seq
    orelse: Statement | None
    line: int = field(default=0, compare=False)
    col: int = field(default=0, compare=False)


# ── Deployment declarations ──────────────────────────────────────


@dataclass(frozen=True)
class SubnodeDecl:
    name: str
    card_min: int
    card_max: int | None  # None means unbounded (`*`)
    body: TypeBody


@dataclass(frozen=True)
class TypeBody:
    root: str  # one of the native type tags
    subnodes: tuple[SubnodeDecl, ...] = ()


@dataclass(frozen=True)
class TypeDecl:
    name: str
    body: TypeBody


@dataclass(frozen=True)
class OperationDecl:
    name: str
    kind: str  # "RequestResponse" | "OneWay"
    request_type: str
    response_type: str | None


@dataclass(frozen=True)
class InterfaceDecl:
    name: str
    operations: tuple[OperationDecl, ...]
    name_span: Span = field(default=Span(0, 0, 0), compare=False)


@dataclass(frozen=True)
class PortDecl:
    direction: str  # "input" | "output"
    name: str
    location: str
    protocol: str
    interfaces: tuple[str, ...]
    protocol_span: Span = field(default=Span(0, 0, 0), compare=False)
    interface_spans: tuple[Span, ...] = field(default=(), compare=False)


@dataclass(frozen=True)
class Program:
    types: tuple[TypeDecl, ...]
    interfaces: tuple[InterfaceDecl, ...]
    ports: tuple[PortDecl, ...]
    main: Seq
