"""Text syntax for statements, with signature inference.

::

    rel X : A*B            # declarations, one per line
    rel T : A*list*B       # 'list' marks a trace position
    X <= Y + Z             # the statement itself

``+`` is ∪, ``&`` is ∩ and ``;`` is ∘, binding loosest to tightest.  ``empty``,
``full`` and ``id`` take their signature from the surrounding expression.
"""

from __future__ import annotations

import re

from ..universe import RelsemError, parse_atom
from . import expr as E


class StatementSyntaxError(RelsemError):
    pass


_TOKEN_RE = re.compile(r"\s*(?:(<=|==|[-+&;()\[\],]|in\b)|([A-Za-z_][A-Za-z0-9_]*|-?\d+))")
_DECL_RE = re.compile(r"rel\s+([A-Za-z_][A-Za-z0-9_]*)\s*:\s*(.+)$")


def _tokenize(text):
    tokens, pos = [], 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None or m.end() == pos:
            raise StatementSyntaxError(f"unexpected input at {text[pos:]!r}")
        tokens.append(m.group(1) or m.group(2))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, text, decls, events, default_shape=None):
        self.default_shape = default_shape
        self.tokens = _tokenize(text)
        self.pos = 0
        self.decls = decls
        self.events = events

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self, tok=None):
        cur = self.peek()
        if cur is None or (tok is not None and cur != tok):
            raise StatementSyntaxError(f"expected {tok or 'a token'}, found {cur!r}")
        self.pos += 1
        return cur

    def statement(self):
        if self._starts_member():
            elem = self.tuple_term()
            self.take("in")
            raw = self.expr()
            self.done()
            return E.Member(elem, _check(raw, self._member_shape(raw, elem), self))
        left = self.expr()
        op = self.take()
        if op not in ("==", "<="):
            raise StatementSyntaxError(f"expected '==' or '<=', found {op!r}")
        right = self.expr()
        self.done()
        shape = _synth(left, self) or _synth(right, self)
        if shape is None:
            raise StatementSyntaxError("cannot infer the signature of either side")
        cls = E.Equiv if op == "==" else E.Included
        return cls(_check(left, shape, self), _check(right, shape, self))

    def _member_shape(self, raw, elem):
        shape = _synth(raw, self)
        if shape is None and raw[0] in ("empty", "full"):
            return None
        if shape is None:
            raise StatementSyntaxError("cannot infer the signature of the expression")
        if len(shape) != len(elem):
            raise StatementSyntaxError(f"tuple of arity {len(elem)} against a "
                                       f"{len(shape)}-ary expression")
        return shape

    def _starts_member(self):
        return "in" in self.tokens and not any(t in ("==", "<=") for t in self.tokens)

    def done(self):
        if self.peek() is not None:
            raise StatementSyntaxError(f"unexpected {self.peek()!r} after statement")

    def atom(self):
        if self.peek() == "[":
            self.take("[")
            events = []
            while self.peek() != "]":
                events.append(parse_atom(self.take()))
                if self.peek() == ",":
                    self.take(",")
            self.take("]")
            return tuple(events)
        return parse_atom(self.take())

    def tuple_term(self):
        if self.peek() == "(":
            self.take("(")
            items = [self.atom()]
            while self.peek() == ",":
                self.take(",")
                items.append(self.atom())
            self.take(")")
            return tuple(items)
        return (self.atom(),)

    def expr(self):
        left = self.inter()
        while self.peek() == "+":
            self.take()
            left = ("+", left, self.inter())
        return left

    def inter(self):
        left = self.comp()
        while self.peek() == "&":
            self.take()
            left = ("&", left, self.comp())
        return left

    def comp(self):
        left = self.primary()
        while self.peek() == ";":
            self.take()
            left = (";", left, self.primary())
        return left

    def primary(self):
        tok = self.take()
        if tok == "(":
            inner = self.expr()
            self.take(")")
            return inner
        if tok in ("empty", "full", "id"):
            return (tok,)
        if tok in self.decls:
            return ("var", tok)
        if self.default_shape is not None and re.fullmatch(r"[A-Za-z_]\w*", tok):
            self.decls[tok] = self.default_shape
            return ("var", tok)
        raise StatementSyntaxError(f"undeclared set {tok!r}")


def _synth(node, p):
    kind = node[0]
    if kind == "var":
        return p.decls[node[1]]
    if kind in ("empty", "full", "id"):
        return None
    if kind in ("+", "&"):
        return _synth(node[1], p) or _synth(node[2], p)
    left, right = _synth(node[1], p), _synth(node[2], p)
    if left is not None and right is not None:
        return E.compose_shape(left, right)[0]
    if left is not None and node[2][0] == "id":
        return left
    if right is not None and node[1][0] == "id":
        return right
    return None


def _split_shapes(target, left, right):
    """Given the composite shape and one operand shape, the other operand's."""
    traced = E.is_traced(target)
    if left is not None:
        if traced:
            return left, (left[2], left[1]) + target[2:]
        return left, (left[1],) + target[1:]
    if traced:
        return (target[0], target[1], right[0]), right
    return (target[0], right[0]), right


def _check(node, shape, p):
    kind = node[0]
    if kind == "var":
        if shape is not None and p.decls[node[1]] != shape:
            raise StatementSyntaxError(
                f"{node[1]} has signature {E.fmt_shape(p.decls[node[1]])}, "
                f"expected {E.fmt_shape(shape)}")
        return E.SVar(node[1], p.decls[node[1]])
    if kind == "empty":
        return E.Empty(shape)
    if kind == "full":
        return E.Full(shape)
    if kind == "id":
        if shape is None:
            raise StatementSyntaxError("cannot infer the sort of id")
        if len(shape) == 2 and not E.is_traced(shape) and shape[0] == shape[1]:
            return E.IdR(shape[0])
        if len(shape) == 3 and E.is_traced(shape) and shape[0] == shape[2]:
            return E.IdT(shape[0], shape[1].events)
        raise StatementSyntaxError(f"id cannot have signature {E.fmt_shape(shape)}")
    if kind in ("+", "&"):
        cls = E.Union if kind == "+" else E.Intersect
        return cls(_check(node[1], shape, p), _check(node[2], shape, p))
    left, right = _synth(node[1], p), _synth(node[2], p)
    if left is None and right is None:
        raise StatementSyntaxError("cannot infer the signatures around ';'")
    if left is None or right is None:
        left, right = _split_shapes(shape, left, right)
    composite, cls = E.compose_shape(left, right)
    if composite != shape:
        raise StatementSyntaxError(
            f"composition has signature {E.fmt_shape(composite)}, expected {E.fmt_shape(shape)}")
    return cls(_check(node[1], left, p), _check(node[2], right, p))


def parse_decl_shape(text, events="E"):
    parts = [c.strip() for c in text.split("*")]
    return tuple(E.ListOf(events) if c == "list" else c for c in parts)


def parse_statement(text, events="E", default_sig=None):
    """Parse declarations followed by one statement; returns (statement, decls).

    With ``default_sig`` (declaration syntax, e.g. ``"A*B"``), undeclared names
    get that signature instead of being rejected.
    """
    default_shape = None if default_sig is None else parse_decl_shape(default_sig, events)
    decls = {}
    body = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = _DECL_RE.match(line)
        if m:
            decls[m.group(1)] = parse_decl_shape(m.group(2), events)
        elif line.startswith("rel "):
            raise StatementSyntaxError(f"line {lineno}: malformed declaration")
        else:
            body.append(line)
    if len(body) != 1:
        raise StatementSyntaxError(f"expected exactly one statement, found {len(body)}")
    return _Parser(body[0], decls, events, default_shape).statement(), decls
