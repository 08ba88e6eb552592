"""Runtime variable store: trees of values addressed by indexed paths.

A variable holds an ordered tree. Each node carries an optional scalar
plus named child lists, and the length of a child list is the node's
cardinality under that name. Writing through a path creates every
missing intermediate node (auto-vivification). Aliases bind a name to an
unevaluated target path; every use re-resolves the target, so index
expressions inside it are re-evaluated each time (dynamic aliasing).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from .nodes import Expr, Path, Scalar
from .tokens import escape_string


class StoreError(Exception):
    kind = "StoreError"


class MissingNode(StoreError):
    kind = "MissingNode"


class UndefinedValue(StoreError):
    kind = "UndefinedValue"


class AliasCycle(StoreError):
    kind = "AliasCycle"


class NegativeIndex(StoreError):
    kind = "NegativeIndex"


@dataclass
class ValueNode:
    scalar: Scalar | None = None
    children: dict[str, list[ValueNode]] = field(default_factory=dict)


@dataclass(frozen=True)
class ResolvedStep:
    name: str
    index: int


@dataclass(frozen=True)
class ResolvedPath:
    """A fully evaluated address: no aliases, every index a concrete int.

    steps[0] is the root, mirroring Path.
    """

    steps: tuple[ResolvedStep, ...]

    @property
    def root_name(self) -> str:
        return self.steps[0].name


class Store:
    """Mutable root-name table plus alias bindings (one shared namespace)."""

    def __init__(self) -> None:
        self.roots: dict[str, list[ValueNode]] = {}
        self.aliases: dict[str, Path] = {}

    def bind_alias(self, name: str, target: Path) -> None:
        """Bind name as an alias; shadows any root of the same name."""
        self.aliases[name] = target

    def bind_root_scalar(self, name: str, value: Scalar) -> None:
        """Bind name directly as a root holding value, dropping any alias."""
        self.aliases.pop(name, None)
        write(self, ResolvedPath((ResolvedStep(name, 0),)), value)


EvalIndex = Callable[[Expr], int]


def resolve(store: Store, path: Path, eval_index: EvalIndex,
            _visiting: frozenset[str] | None = None) -> ResolvedPath:
    """Expand aliases and evaluate indexes, producing a concrete address.

    An absent index resolves to 0. An index on an alias use site applies
    to the final step of the alias target's expansion, so `v[i]` with
    `v -> a.b` addresses `a.b[i]`.
    """
    visiting = _visiting or frozenset()
    root = path.segments[0]
    steps: list[ResolvedStep]
    if root.name in store.aliases:
        if root.name in visiting:
            raise AliasCycle(f"alias cycle through '{root.name}'")
        target = store.aliases[root.name]
        base = resolve(store, target, eval_index,
                       visiting | {root.name})
        steps = list(base.steps)
        if root.index is not None:
            steps[-1] = ResolvedStep(steps[-1].name,
                                     _eval(eval_index, root.index))
    else:
        index = 0 if root.index is None else _eval(eval_index, root.index)
        steps = [ResolvedStep(root.name, index)]
    for segment in path.segments[1:]:
        index = 0 if segment.index is None else _eval(eval_index,
                                                      segment.index)
        steps.append(ResolvedStep(segment.name, index))
    return ResolvedPath(tuple(steps))


def _eval(eval_index: EvalIndex, expr: Expr) -> int:
    value = eval_index(expr)
    if value < 0:
        raise NegativeIndex(f"index evaluated to {value}")
    return value


def _extend(nodes: list[ValueNode], index: int) -> ValueNode:
    while len(nodes) <= index:
        nodes.append(ValueNode())
    return nodes[index]


def write(store: Store, resolved: ResolvedPath, value: Scalar) -> None:
    """Set the scalar at the addressed node, creating missing structure.

    Writing at index k extends the target list with empty nodes up to
    length k + 1; lists never shrink.
    """
    first = resolved.steps[0]
    node = _extend(store.roots.setdefault(first.name, []), first.index)
    for step in resolved.steps[1:]:
        node = _extend(node.children.setdefault(step.name, []), step.index)
    node.scalar = value


def get_node(store: Store, resolved: ResolvedPath) -> ValueNode | None:
    node: ValueNode | None = None
    for i, step in enumerate(resolved.steps):
        nodes = store.roots.get(step.name) if i == 0 else (
            node.children.get(step.name) if node is not None else None)
        if nodes is None or step.index >= len(nodes):
            return None
        node = nodes[step.index]
    return node


def read(store: Store, resolved: ResolvedPath) -> Scalar:
    node = get_node(store, resolved)
    if node is None:
        raise MissingNode(f"no node at {format_resolved(resolved)}")
    if node.scalar is None:
        raise UndefinedValue(f"no value at {format_resolved(resolved)}")
    return node.scalar


def count(store: Store, resolved: ResolvedPath) -> int:
    """Number of values under the final step's name (its index is ignored).

    The parent chain is followed at the resolved indexes; a missing step
    anywhere yields 0.
    """
    last = resolved.steps[-1]
    if len(resolved.steps) == 1:
        return len(store.roots.get(last.name, ()))
    parent = get_node(store, ResolvedPath(resolved.steps[:-1]))
    if parent is None:
        return 0
    return len(parent.children.get(last.name, ()))


def format_resolved(resolved: ResolvedPath) -> str:
    return ".".join(f"{s.name}[{s.index}]" for s in resolved.steps)


def _format_scalar(value: Scalar | None) -> str:
    if value is None:
        return "undefined"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, str):
        return escape_string(value)
    return repr(value) if isinstance(value, float) else str(value)


def dump(store: Store) -> str:
    """Deterministic text dump of every tree node, one `path = scalar` line.

    Roots appear in insertion order; aliases and shadowing are name
    resolution concerns and do not appear here.
    """
    lines: list[str] = []

    def walk(prefix: str, node: ValueNode) -> None:
        lines.append(f"{prefix} = {_format_scalar(node.scalar)}")
        for name, nodes in node.children.items():
            for i, child in enumerate(nodes):
                walk(f"{prefix}.{name}[{i}]", child)

    for name, nodes in store.roots.items():
        for i, node in enumerate(nodes):
            walk(f"{name}[{i}]", node)
    return "\n".join(lines)
