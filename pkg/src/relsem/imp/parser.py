"""Recursive-descent parser for the toy language.

Grammar::

    com   := simple (";" com)?
    simple:= "skip" | ident ":=" aexp | "{" com "}"
           | "if" "(" bexp ")" "then" "{" com "}" "else" "{" com "}"
           | "while" "(" bexp ")" "do" "{" com "}"
           | "choice" "{" com "}" "or" "{" com "}"
           | "write" "(" aexp ")"
    bexp  := conj ("||" conj)*
    conj  := neg ("&&" neg)*
    neg   := "!" neg | "true" | "false" | "(" bexp ")" | aexp cmp aexp
    aexp  := term (("+" | "-") term)*
    term  := factor ("*" factor)*
    factor:= int | ident | "-" factor | "(" aexp ")"
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from ..universe import RelsemError
from . import syntax as ast


class ParseError(RelsemError):
    def __init__(self, message, line):
        self.line = line
        super().__init__(f"line {line}: {message}")


KEYWORDS = {"skip", "if", "then", "else", "while", "do", "choice", "or", "write",
            "true", "false"}

_TOKEN_RE = re.compile(r"""
    (?P<ws>[ \t\r]+|\#[^\n]*)
  | (?P<nl>\n)
  | (?P<int>\d+)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<op>:=|==|<=|>=|!=|&&|\|\||[-+*<>!;(){}])
""", re.VERBOSE)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int


def tokenize(text):
    tokens = []
    line = 1
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line)
        kind = m.lastgroup
        if kind == "nl":
            line += 1
        elif kind == "ident" and m.group() in KEYWORDS:
            tokens.append(Token("kw", m.group(), line))
        elif kind != "ws":
            tokens.append(Token(kind, m.group(), line))
        pos = m.end()
    tokens.append(Token("eof", "", line))
    return tokens


class Parser:
    def __init__(self, text, variables=None):
        self.tokens = tokenize(text)
        self.pos = 0
        self.variables = None if variables is None else set(variables)

    def peek(self, text=None, kind=None):
        tok = self.tokens[self.pos]
        if text is not None and tok.text != text:
            return None
        if kind is not None and tok.kind != kind:
            return None
        return tok

    def accept(self, text):
        tok = self.tokens[self.pos]
        if tok.text == text and tok.kind in ("op", "kw"):
            self.pos += 1
            return tok
        return None

    def expect(self, text):
        tok = self.accept(text)
        if tok is None:
            self.fail(f"expected {text!r}")
        return tok

    def fail(self, message):
        tok = self.tokens[self.pos]
        found = tok.text or "end of input"
        raise ParseError(f"{message}, found {found!r}", tok.line)

    def parse(self):
        com = self.command()
        if not self.peek(kind="eof"):
            self.fail("expected end of program")
        return com

    def command(self):
        first = self.simple()
        if self.accept(";"):
            return ast.Seq(first, self.command())
        return first

    def block(self):
        self.expect("{")
        com = self.command()
        self.expect("}")
        return com

    def simple(self):
        if self.accept("skip"):
            return ast.Skip()
        if self.peek("{"):
            return self.block()
        if self.accept("if"):
            self.expect("(")
            cond = self.bexp()
            self.expect(")")
            self.expect("then")
            then = self.block()
            self.expect("else")
            return ast.If(cond, then, self.block())
        if self.accept("while"):
            self.expect("(")
            cond = self.bexp()
            self.expect(")")
            self.expect("do")
            return ast.While(cond, self.block())
        if self.accept("choice"):
            left = self.block()
            self.expect("or")
            return ast.Choice(left, self.block())
        if self.accept("write"):
            self.expect("(")
            expr = self.aexp()
            self.expect(")")
            return ast.Write(expr)
        tok = self.peek(kind="ident")
        if tok:
            self.pos += 1
            self.check_var(tok)
            self.expect(":=")
            return ast.Assign(tok.text, self.aexp())
        self.fail("expected a command")

    def check_var(self, tok):
        if self.variables is not None and tok.text not in self.variables:
            raise ParseError(f"undeclared variable {tok.text}", tok.line)

    def bexp(self):
        left = self.conj()
        while self.accept("||"):
            left = ast.Or(left, self.conj())
        return left

    def conj(self):
        left = self.neg()
        while self.accept("&&"):
            left = ast.And(left, self.neg())
        return left

    def neg(self):
        if self.accept("!"):
            return ast.Not(self.neg())
        if self.accept("true"):
            return ast.BConst(True)
        if self.accept("false"):
            return ast.BConst(False)
        if self.peek("("):
            # "(" opens either a parenthesised bexp or an aexp operand
            saved = self.pos
            self.pos += 1
            try:
                inner = self.bexp()
                self.expect(")")
                if not self.peek(kind="op") or self.peek().text in (")", "&&", "||", ";"):
                    return inner
            except ParseError:
                pass
            self.pos = saved
        left = self.aexp()
        tok = self.peek(kind="op")
        if tok is None or tok.text not in ("==", "<=", "<", ">=", ">", "!="):
            self.fail("expected a comparison operator")
        self.pos += 1
        return ast.Cmp(tok.text, left, self.aexp())

    def aexp(self):
        left = self.term()
        while True:
            if self.accept("+"):
                left = ast.BinOp("+", left, self.term())
            elif self.accept("-"):
                left = ast.BinOp("-", left, self.term())
            else:
                return left

    def term(self):
        left = self.factor()
        while self.accept("*"):
            left = ast.BinOp("*", left, self.factor())
        return left

    def factor(self):
        tok = self.peek(kind="int")
        if tok:
            self.pos += 1
            return ast.Num(int(tok.text))
        tok = self.peek(kind="ident")
        if tok:
            self.pos += 1
            self.check_var(tok)
            return ast.Var(tok.text)
        if self.accept("-"):
            return ast.BinOp("-", ast.Num(0), self.factor())
        if self.accept("("):
            inner = self.aexp()
            self.expect(")")
            return inner
        self.fail("expected an integer expression")


def parse_program(text, universe=None):
    """Parse ``text``; with a universe, reject undeclared variables."""
    variables = None if universe is None else universe.var_names
    return Parser(text, variables).parse()


def parse_bexp(text, universe=None):
    variables = None if universe is None else universe.var_names
    p = Parser(text, variables)
    e = p.bexp()
    if not p.peek(kind="eof"):
        p.fail("expected end of expression")
    return e
