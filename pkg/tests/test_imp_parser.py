import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from relsem.imp import ParseError, parse_bexp, parse_program
from relsem.imp.gen import ProgramGen, random_universe
from relsem.imp.syntax import (
    And,
    Assign,
    BinOp,
    Choice,
    Cmp,
    If,
    Not,
    Num,
    Or,
    Seq,
    Skip,
    Var,
    While,
    Write,
)
from relsem.universe import parse_universe


def test_skip():
    assert parse_program("skip") == Skip()


def test_seq_literal():
    assert parse_program("x := x + 1; skip") == Seq(
        Assign("x", BinOp("+", Var("x"), Num(1))), Skip())


def test_seq_right_assoc():
    a, b, c = (Assign(v, Num(0)) for v in "abc")
    assert parse_program("a := 0; b := 0; c := 0") == Seq(a, Seq(b, c))


def test_arith_precedence():
    got = parse_program("x := 1 + 2 * x - 3")
    assert got.expr == BinOp("-", BinOp("+", Num(1), BinOp("*", Num(2), Var("x"))), Num(3))


def test_bool_precedence():
    got = parse_bexp("!x < 1 && true || x == 2")
    assert got == Or(And(Not(Cmp("<", Var("x"), Num(1))), parse_bexp("true")),
                     Cmp("==", Var("x"), Num(2)))


def test_parenthesised_bool_and_arith():
    assert parse_bexp("(x + 1) < 2") == Cmp("<", BinOp("+", Var("x"), Num(1)), Num(2))
    assert parse_bexp("(x < 1 || x > 2) && true").left == Or(
        Cmp("<", Var("x"), Num(1)), Cmp(">", Var("x"), Num(2)))


def test_structured_commands():
    text = """
    if (x < 2) then { x := 1 } else { skip };
    while (x <= 3) do { choice { x := x + 1 } or { write(x) } }
    """
    got = parse_program(text)
    assert isinstance(got, Seq) and isinstance(got.first, If)
    loop = got.second
    assert isinstance(loop, While)
    assert loop.body == Choice(Assign("x", BinOp("+", Var("x"), Num(1))), Write(Var("x")))


def test_syntax_error_has_line():
    with pytest.raises(ParseError) as info:
        parse_program("skip;\nx := ;")
    assert info.value.line == 2


def test_undeclared_variable():
    u = parse_universe("var x : 0..1")
    with pytest.raises(ParseError, match="undeclared"):
        parse_program("y := 1", u)


@given(st.integers(0, 10**6))
def test_print_parse_roundtrip(seed):
    rng = random.Random(seed)
    u = random_universe(rng)
    prog = ProgramGen(rng, u, choice=True, write=True).command()
    assert parse_program(str(prog), u) == prog
