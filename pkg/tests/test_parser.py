"""Parser tests: declarations, statements, expressions, and rejections."""

import pytest

from joliet.nodes import (
    AliasBind,
    Assign,
    Binary,
    BoolLit,
    Count,
    For,
    ForeachArrow,
    ForeachColon,
    If,
    IntLit,
    Path,
    PathRead,
    PathSegment,
    Println,
    Seq,
    StringLit,
    Unary,
    VarRead,
)
from joliet.parser import ParseError, parse_program

PORT_SOURCE = """interface I {
    OneWay: f(string)
}

outputPort P {
    Location: "socket://x:80"
    Protocol: sodep
    Interfaces: I
}

main { x = 1 }
"""


def main_stmts(source):
    return parse_program(source).main.children


def seg(name, index=None):
    return PathSegment(name, index)


def test_minimal_program():
    program = parse_program("main { x = 1 }")
    assert program.types == ()
    assert program.interfaces == ()
    assert program.ports == ()
    assert program.main == Seq((Assign(Path((seg("x"),)), IntLit(1)),))


def test_empty_main():
    assert parse_program("main { }").main == Seq(())


def test_port_declaration_with_spans():
    program = parse_program(PORT_SOURCE)
    (port,) = program.ports
    assert port.direction == "output"
    assert port.name == "P"
    assert port.location == "socket://x:80"
    assert port.protocol == "sodep"
    assert port.interfaces == ("I",)
    span = port.protocol_span
    assert PORT_SOURCE.split("\n")[span.line - 1][
        span.col - 1:span.col - 1 + span.length] == "sodep"
    (ispan,) = port.interface_spans
    assert PORT_SOURCE.split("\n")[ispan.line - 1][
        ispan.col - 1:ispan.col - 1 + ispan.length] == "I"


def test_interface_declaration():
    program = parse_program("""
interface Calc {
    RequestResponse: add(int)(int), sub(int)(int)
    OneWay: log(string)
}
main { }
""")
    (decl,) = program.interfaces
    assert [op.name for op in decl.operations] == ["add", "sub", "log"]
    assert decl.operations[0].response_type == "int"
    assert decl.operations[2].kind == "OneWay"
    assert decl.operations[2].response_type is None


def test_type_declaration_cardinality():
    program = parse_program("""
type Person: void {
    .name: string
    .addr[0,*]: void {
        .city: string
    }
    .tags[2,5]: int
}
main { }
""")
    (decl,) = program.types
    assert decl.body.root == "void"
    by_name = {s.name: s for s in decl.body.subnodes}
    assert (by_name["name"].card_min, by_name["name"].card_max) == (1, 1)
    assert (by_name["addr"].card_min, by_name["addr"].card_max) == (0, None)
    assert (by_name["tags"].card_min, by_name["tags"].card_max) == (2, 5)
    assert by_name["addr"].body.subnodes[0].name == "city"


def test_statement_forms():
    stmts = main_stmts("""
main {
    europe.ireland.city = "Dublin";
    var1 -> a.b.c.d[1];
    println("hi");
    println@Console("hi");
    for (i = 0, i < 3, i++) { println(i) };
    foreach (k : a) { println(k) };
    foreach (v -> a.b) { println(v) };
    if (1 < 2) { x = 1 } else { x = 2 }
}
""")
    assert isinstance(stmts[0], Assign)
    assert stmts[0].path == Path((seg("europe"), seg("ireland"), seg("city")))
    assert stmts[0].expr == StringLit("Dublin")
    assert stmts[1] == AliasBind("var1", Path(
        (seg("a"), seg("b"), seg("c"), seg("d", IntLit(1)))))
    assert stmts[2] == Println(StringLit("hi"))
    assert stmts[3] == stmts[2]
    loop = stmts[4]
    assert isinstance(loop, For)
    assert loop.init_name == loop.post_name == "i"
    assert loop.post_expr == Binary("+", VarRead("i"), IntLit(1))
    assert isinstance(stmts[5], ForeachColon)
    assert isinstance(stmts[6], ForeachArrow)
    assert isinstance(stmts[7], If)
    assert stmts[7].orelse is not None


def test_else_if_chain():
    (stmt,) = main_stmts(
        "main { if (true) { x = 1 } else if (false) { x = 2 } else { x = 3 } }")
    assert isinstance(stmt.orelse, If)
    assert isinstance(stmt.orelse.orelse, Seq)


def test_trailing_semicolon_is_optional():
    assert main_stmts("main { x = 1; }") == main_stmts("main { x = 1 }")


def test_expression_precedence():
    (stmt,) = main_stmts("main { x = 1 + 2 * 3 < 4 && true || false }")
    expr = stmt.expr
    assert expr == Binary(
        "||",
        Binary("&&",
               Binary("<", Binary("+", IntLit(1),
                                  Binary("*", IntLit(2), IntLit(3))),
                      IntLit(4)),
               BoolLit(True)),
        BoolLit(False))


def test_parentheses_and_unary():
    (stmt,) = main_stmts("main { x = -(1 + 2) * !true }")
    assert stmt.expr == Binary(
        "*", Unary("-", Binary("+", IntLit(1), IntLit(2))),
        Unary("!", BoolLit(True)))


def test_count_and_path_reads():
    (stmt,) = main_stmts("main { x = #a.b + a.b[i].c }")
    assert stmt.expr == Binary(
        "+", Count(Path((seg("a"), seg("b")))),
        PathRead(Path((seg("a"), seg("b", VarRead("i")), seg("c")))))


def test_bare_name_is_var_read():
    (stmt,) = main_stmts("main { x = v }")
    assert stmt.expr == VarRead("v")
    (stmt,) = main_stmts("main { x = v[1] }")
    assert stmt.expr == PathRead(Path((seg("v", IntLit(1)),)))


def test_path_root_may_be_indexed():
    (stmt,) = main_stmts("main { a[1].b = 2 }")
    assert stmt.path == Path((seg("a", IntLit(1)), seg("b")))


def test_arrow_foreach_rejects_indexed_final_segment():
    with pytest.raises(ParseError) as err:
        parse_program("main { foreach (v -> a.b[0]) { println(v) } }")
    assert "node" in err.value.expected
    # intermediate indexes stay legal
    parse_program("main { foreach (v -> a[1].b) { println(v) } }")


def test_arrow_foreach_rejection_for_generated_index_expressions():
    import random

    rng = random.Random(11)

    def gen_index(depth=0):
        roll = rng.random()
        if depth >= 2 or roll < 0.4:
            return str(rng.randint(0, 9))
        if roll < 0.6:
            return rng.choice(("i", "j", "n"))
        if roll < 0.8:
            op = rng.choice(("+", "-", "*"))
            return f"{gen_index(depth + 1)} {op} {gen_index(depth + 1)}"
        return f"#{rng.choice(('a.b', 'c'))}"

    for _ in range(60):
        target = rng.choice(("a.b", "a", "m.row.cell"))
        index = gen_index()
        source = (f"main {{ foreach (v -> {target}[{index}]) "
                  f"{{ println(v) }} }}")
        with pytest.raises(ParseError):
            parse_program(source)


def test_count_rejects_indexed_final_segment():
    with pytest.raises(ParseError):
        parse_program("main { x = #a.b[0] }")
    parse_program("main { x = #a[1].b }")


def test_alias_lhs_must_be_bare():
    with pytest.raises(ParseError):
        parse_program("main { a.b -> c }")
    with pytest.raises(ParseError):
        parse_program("main { a[0] -> c }")


def test_duplicate_declaration_names_rejected():
    with pytest.raises(ParseError) as err:
        parse_program("""
interface I { OneWay: f(string) }
interface I { OneWay: g(string) }
main { }
""")
    assert "duplicate" in err.value.found
    with pytest.raises(ParseError):
        parse_program("type T: int type T: string main { }")


def test_unresolved_port_interface_rejected():
    with pytest.raises(ParseError) as err:
        parse_program("""
outputPort P {
    Location: "socket://x:80"
    Protocol: sodep
    Interfaces: Nope
}
main { }
""")
    assert err.value.found == "'Nope'"
    assert err.value.line == 5


def test_declarations_in_any_order():
    source = """
outputPort P {
    Location: "socket://x:80"
    Protocol: http
    Interfaces: I
}
interface I { OneWay: f(string) }
main { }
"""
    program = parse_program(source)
    assert program.ports[0].interfaces == ("I",)


def test_parse_error_positions():
    with pytest.raises(ParseError) as err:
        parse_program("main { x = }")
    assert (err.value.line, err.value.col) == (1, 12)
    assert err.value.found == "'}'"
    with pytest.raises(ParseError) as err:
        parse_program("main { x = 1 ")
    assert err.value.found == "end of input"
    with pytest.raises(ParseError):
        parse_program("main { foreach }")
    with pytest.raises(ParseError):
        parse_program("")


def test_trailing_content_rejected():
    with pytest.raises(ParseError):
        parse_program("main { } main { }")


def test_generated_identifiers_parse():
    (loop,) = main_stmts(
        "main { for (#fe_0 = 0, #fe_0 < 2, #fe_0++) { println(#fe_0) } }")
    assert loop.init_name == "#fe_0"
    assert loop.body.children[0].expr == VarRead("#fe_0")
