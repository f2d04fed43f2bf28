"""Abstract syntax of the toy imperative language."""

from __future__ import annotations

from dataclasses import dataclass


class AExp:
    pass


@dataclass(frozen=True)
class Num(AExp):
    value: int

    def __str__(self):
        return str(self.value)


@dataclass(frozen=True)
class Var(AExp):
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class BinOp(AExp):
    op: str
    left: AExp
    right: AExp

    def __str__(self):
        return f"({self.left} {self.op} {self.right})"


class BExp:
    pass


@dataclass(frozen=True)
class BConst(BExp):
    value: bool

    def __str__(self):
        return "true" if self.value else "false"


@dataclass(frozen=True)
class Cmp(BExp):
    op: str
    left: AExp
    right: AExp

    def __str__(self):
        return f"{self.left} {self.op} {self.right}"


@dataclass(frozen=True)
class Not(BExp):
    arg: BExp

    def __str__(self):
        return f"!({self.arg})"


@dataclass(frozen=True)
class And(BExp):
    left: BExp
    right: BExp

    def __str__(self):
        return f"({self.left} && {self.right})"


@dataclass(frozen=True)
class Or(BExp):
    left: BExp
    right: BExp

    def __str__(self):
        return f"({self.left} || {self.right})"


class Command:
    pass


@dataclass(frozen=True)
class Skip(Command):
    def __str__(self):
        return "skip"


@dataclass(frozen=True)
class Assign(Command):
    var: str
    expr: AExp

    def __str__(self):
        return f"{self.var} := {self.expr}"


@dataclass(frozen=True)
class Seq(Command):
    first: Command
    second: Command

    def __str__(self):
        first = f"{{{self.first}}}" if isinstance(self.first, Seq) else str(self.first)
        return f"{first}; {self.second}"


@dataclass(frozen=True)
class If(Command):
    cond: BExp
    then: Command
    orelse: Command

    def __str__(self):
        return f"if ({self.cond}) then {{ {self.then} }} else {{ {self.orelse} }}"


@dataclass(frozen=True)
class While(Command):
    cond: BExp
    body: Command

    def __str__(self):
        return f"while ({self.cond}) do {{ {self.body} }}"


@dataclass(frozen=True)
class Choice(Command):
    left: Command
    right: Command

    def __str__(self):
        return f"choice {{ {self.left} }} or {{ {self.right} }}"


@dataclass(frozen=True)
class Write(Command):
    expr: AExp

    def __str__(self):
        return f"write({self.expr})"


def subcommands(c):
    """Yield ``c`` and every command nested inside it."""
    yield c
    for child in getattr(c, "__dataclass_fields__", {}):
        value = getattr(c, child)
        if isinstance(value, Command):
            yield from subcommands(value)


def uses(c, kind):
    return any(isinstance(sub, kind) for sub in subcommands(c))
