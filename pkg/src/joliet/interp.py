"""Tree-walking evaluator for the behavior part.

Arrow-foreach is interpreted directly here with exactly the semantics of
its lowered form: the element count is re-checked every iteration, the
alias is rebound to `target[j]` before each body execution, and that
rebinding is charged against the step budget like the alias statement
the rewrite would emit. This makes direct and lowered execution
indistinguishable, budget included, which is what the equivalence suite
checks.

Loop counters live in a flat integer environment separate from the tree
store, so a `for` over `i` never vivifies a tree root named `i`. Bare
names in expressions check that environment first and fall back to the
store.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import valuetree
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
    IntLit,
    Path,
    PathRead,
    PathSegment,
    Println,
    Program,
    Scalar,
    Seq,
    Statement,
    StringLit,
    Unary,
    VarRead,
)
from .valuetree import Store, StoreError

DEFAULT_BUDGET = 100_000


class RuntimeFault(Exception):
    def __init__(self, kind: str, line: int | None = None,
                 col: int | None = None, detail: str = "") -> None:
        where = f" at {line}:{col}" if line is not None else ""
        extra = f": {detail}" if detail else ""
        super().__init__(f"{kind}{where}{extra}")
        self.kind = kind
        self.line = line
        self.col = col
        self.detail = detail


class BudgetExhausted(RuntimeFault):
    def __init__(self, line: int | None = None, col: int | None = None) -> None:
        super().__init__("BudgetExhausted", line, col)


@dataclass
class ExecContext:
    store: Store = field(default_factory=Store)
    counters: dict[str, int] = field(default_factory=dict)
    output: list[str] = field(default_factory=list)
    budget: int = DEFAULT_BUDGET


@dataclass(frozen=True)
class Fault:
    kind: str
    line: int
    col: int


@dataclass
class ExecOutcome:
    output: list[str]
    dump: str
    fault: Fault | None = None


def format_scalar(value: Scalar) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _mismatch(detail: str) -> RuntimeFault:
    return RuntimeFault("TypeMismatch", detail=detail)


def _is_number(value: Scalar) -> bool:
    return isinstance(value, (int, float)) and not isinstance(value, bool)


def _trunc_div(a: int, b: int) -> int:
    q = a // b
    if q < 0 and q * b != a:
        q += 1
    return q


def eval_expr(ctx: ExecContext, expr: Expr) -> Scalar:
    if isinstance(expr, (IntLit, BoolLit, DoubleLit, StringLit)):
        return expr.value
    if isinstance(expr, VarRead):
        if expr.name in ctx.counters:
            return ctx.counters[expr.name]
        path = Path((PathSegment(expr.name),))
        return valuetree.read(ctx.store, _resolve(ctx, path))
    if isinstance(expr, PathRead):
        return valuetree.read(ctx.store, _resolve(ctx, expr.path))
    if isinstance(expr, Count):
        return valuetree.count(ctx.store, _resolve(ctx, expr.path))
    if isinstance(expr, Unary):
        value = eval_expr(ctx, expr.operand)
        if expr.op == "!":
            if not isinstance(value, bool):
                raise _mismatch("'!' needs a bool")
            return not value
        if not _is_number(value):
            raise _mismatch("unary '-' needs a number")
        return -value
    if isinstance(expr, Binary):
        return _eval_binary(ctx, expr)
    raise TypeError(f"unknown expression node: {expr!r}")


def _eval_binary(ctx: ExecContext, expr: Binary) -> Scalar:
    op = expr.op
    if op in ("&&", "||"):
        left = eval_expr(ctx, expr.left)
        if not isinstance(left, bool):
            raise _mismatch(f"'{op}' needs bools")
        if op == "&&" and not left:
            return False
        if op == "||" and left:
            return True
        right = eval_expr(ctx, expr.right)
        if not isinstance(right, bool):
            raise _mismatch(f"'{op}' needs bools")
        return right

    left = eval_expr(ctx, expr.left)
    right = eval_expr(ctx, expr.right)

    if op == "+" and isinstance(left, str) and isinstance(right, str):
        return left + right
    if op in ("==", "!="):
        if isinstance(left, bool) and isinstance(right, bool):
            same = left == right
        elif isinstance(left, str) and isinstance(right, str):
            same = left == right
        elif _is_number(left) and _is_number(right):
            same = left == right
        else:
            raise _mismatch(f"'{op}' on incompatible types")
        return same if op == "==" else not same
    if not (_is_number(left) and _is_number(right)):
        raise _mismatch(f"'{op}' needs numbers")
    if op == "+":
        return left + right
    if op == "-":
        return left - right
    if op == "*":
        return left * right
    if op == "/":
        if right == 0:
            raise RuntimeFault("DivisionByZero")
        if isinstance(left, int) and isinstance(right, int):
            return _trunc_div(left, right)
        return left / right
    if op == "<":
        return left < right
    if op == "<=":
        return left <= right
    if op == ">":
        return left > right
    if op == ">=":
        return left >= right
    raise TypeError(f"unknown operator: {op}")


def _eval_index(ctx: ExecContext, expr: Expr) -> int:
    value = eval_expr(ctx, expr)
    if isinstance(value, bool) or not isinstance(value, int):
        raise _mismatch("index must be an int")
    return value


def _resolve(ctx: ExecContext, path: Path) -> valuetree.ResolvedPath:
    return valuetree.resolve(ctx.store, path,
                             lambda e: _eval_index(ctx, e))


def _eval_bool(ctx: ExecContext, expr: Expr, what: str) -> bool:
    value = eval_expr(ctx, expr)
    if not isinstance(value, bool):
        raise _mismatch(f"{what} must be a bool")
    return value


def _eval_counter(ctx: ExecContext, expr: Expr) -> int:
    value = eval_expr(ctx, expr)
    if isinstance(value, bool) or not isinstance(value, int):
        raise _mismatch("loop counter must be an int")
    return value


def _charge(ctx: ExecContext, stmt: Statement) -> None:
    if ctx.budget <= 0:
        raise BudgetExhausted(stmt.line, stmt.col)
    ctx.budget -= 1


def exec_statement(ctx: ExecContext, stmt: Statement) -> None:
    if isinstance(stmt, Seq):
        for child in stmt.children:
            exec_statement(ctx, child)
        return
    _charge(ctx, stmt)
    try:
        _dispatch(ctx, stmt)
    except StoreError as err:
        raise RuntimeFault(err.kind, stmt.line, stmt.col, str(err)) from err
    except RuntimeFault as err:
        if err.line is None:
            raise RuntimeFault(err.kind, stmt.line, stmt.col,
                               err.detail) from err
        raise


def _dispatch(ctx: ExecContext, stmt: Statement) -> None:
    if isinstance(stmt, Assign):
        value = eval_expr(ctx, stmt.expr)
        valuetree.write(ctx.store, _resolve(ctx, stmt.path), value)
    elif isinstance(stmt, AliasBind):
        ctx.store.bind_alias(stmt.name, stmt.target)
    elif isinstance(stmt, Println):
        ctx.output.append(format_scalar(eval_expr(ctx, stmt.expr)))
    elif isinstance(stmt, For):
        ctx.counters[stmt.init_name] = _eval_counter(ctx, stmt.init_expr)
        while _eval_bool(ctx, stmt.cond, "loop condition"):
            exec_statement(ctx, stmt.body)
            ctx.counters[stmt.post_name] = _eval_counter(ctx, stmt.post_expr)
    elif isinstance(stmt, ForeachColon):
        exec_foreach_colon(ctx, stmt)
    elif isinstance(stmt, ForeachArrow):
        exec_foreach_arrow(ctx, stmt)
    elif isinstance(stmt, If):
        if _eval_bool(ctx, stmt.cond, "condition"):
            exec_statement(ctx, stmt.then)
        elif stmt.orelse is not None:
            exec_statement(ctx, stmt.orelse)
    else:
        raise TypeError(f"unknown statement node: {stmt!r}")


def exec_foreach_colon(ctx: ExecContext, stmt: ForeachColon) -> None:
    """Iterate the child names of the node the full path addresses.

    An absent node means zero iterations. The key variable is bound as a
    string-valued root (a direct binding, replacing any alias of that
    name), charged one step per iteration.
    """
    node = valuetree.get_node(ctx.store, _resolve(ctx, stmt.target))
    if node is None:
        return
    for name in list(node.children.keys()):
        _charge(ctx, stmt)
        ctx.store.bind_root_scalar(stmt.key_var, name)
        exec_statement(ctx, stmt.body)


def exec_foreach_arrow(ctx: ExecContext, stmt: ForeachArrow) -> None:
    """Iterate the values of the target node through a rebound alias.

    Mirrors the lowered for loop step for step: the count is re-evaluated
    before every iteration and the per-iteration rebinding costs one
    budget step, exactly like the alias statement the rewrite emits. On
    zero values the alias is never bound.
    """
    j = 0
    while True:
        n = valuetree.count(ctx.store, _resolve(ctx, stmt.target))
        if j >= n:
            return
        _charge(ctx, stmt)
        ctx.store.bind_alias(stmt.alias_var,
                             stmt.target.with_final_index(IntLit(j)))
        exec_statement(ctx, stmt.body)
        j += 1


def run(program: Program, step_budget: int = DEFAULT_BUDGET) -> tuple[list[str], str]:
    """Execute main; return (printed lines, store dump).

    Raises RuntimeFault (or BudgetExhausted) with the position of the
    statement that failed.
    """
    if step_budget <= 0:
        raise ValueError("step_budget must be positive")
    ctx = ExecContext(budget=step_budget)
    exec_statement(ctx, program.main)
    return ctx.output, valuetree.dump(ctx.store)


def execute(program: Program, step_budget: int = DEFAULT_BUDGET) -> ExecOutcome:
    """Like run, but returns faults structurally with partial output."""
    if step_budget <= 0:
        raise ValueError("step_budget must be positive")
    ctx = ExecContext(budget=step_budget)
    try:
        exec_statement(ctx, program.main)
    except RuntimeFault as err:
        return ExecOutcome(ctx.output, valuetree.dump(ctx.store),
                           Fault(err.kind, err.line or 0, err.col or 0))
    return ExecOutcome(ctx.output, valuetree.dump(ctx.store))
