"""Seeded random universes and programs for the property suites.

Programs have depth at most 4 and use at most two variables with ranges
inside 0..3.  Loops are unconstrained, so generated programs may diverge.
"""

from __future__ import annotations

import random

from ..universe import Sort, Universe
from . import syntax as ast

EVENT_LABELS = ("e0", "e1", "e2", "e3")


def random_universe(rng: random.Random, max_vars=2, max_hi=3):
    names = ["x", "y"][: rng.randint(1, max_vars)]
    state_vars = tuple((n, 0, rng.randint(1, max_hi)) for n in names)
    events = Sort("E", EVENT_LABELS)
    return Universe({}, state_vars, events, {i: lab for i, lab in enumerate(EVENT_LABELS)})


class ProgramGen:
    def __init__(self, rng, universe, choice=True, write=False, max_depth=4):
        self.rng = rng
        self.universe = universe
        self.names = list(universe.var_names)
        self.choice = choice
        self.write = write
        self.max_depth = max_depth

    def var(self):
        return ast.Var(self.rng.choice(self.names))

    def aexp(self, depth=2):
        rng = self.rng
        roll = rng.random()
        if depth == 0 or roll < 0.35:
            return self.var() if rng.random() < 0.6 else ast.Num(rng.randint(0, 3))
        op = rng.choice(["+", "+", "-", "*"])
        if rng.random() < 0.6:
            return ast.BinOp(op, self.var(), ast.Num(rng.randint(0, 2)))
        return ast.BinOp(op, self.aexp(depth - 1), self.aexp(depth - 1))

    def bexp(self, depth=2):
        rng = self.rng
        roll = rng.random()
        if depth == 0 or roll < 0.6:
            if rng.random() < 0.08:
                return ast.BConst(rng.random() < 0.5)
            op = rng.choice(["<", "<=", "==", "!=", ">", ">="])
            return ast.Cmp(op, self.var(), self.aexp(1))
        if roll < 0.75:
            return ast.Not(self.bexp(depth - 1))
        if roll < 0.88:
            return ast.And(self.bexp(depth - 1), self.bexp(depth - 1))
        return ast.Or(self.bexp(depth - 1), self.bexp(depth - 1))

    def leaf(self):
        rng = self.rng
        roll = rng.random()
        if self.write and roll < 0.3:
            if rng.random() < 0.5:
                return ast.Write(self.var())
            return ast.Write(ast.Num(rng.randint(0, 3)))
        if roll < 0.45:
            return ast.Skip()
        return ast.Assign(rng.choice(self.names), self.aexp())

    def command(self, depth=None):
        if depth is None:
            depth = self.rng.choice(range(2, self.max_depth + 1))
        if depth <= 1:
            return self.leaf()
        kinds = ["leaf", "seq", "seq", "if", "while", "while"]
        if self.choice:
            kinds.append("choice")
        kind = self.rng.choice(kinds)

        def sub():
            if self.rng.random() < 0.7:
                return self.command(depth - 1)
            return self.command(self.rng.randint(1, depth - 1))

        if kind == "leaf":
            return self.leaf()
        if kind == "seq":
            return ast.Seq(sub(), sub())
        if kind == "if":
            return ast.If(self.bexp(), sub(), sub())
        if kind == "while":
            return ast.While(self.bexp(), sub())
        return ast.Choice(sub(), sub())
