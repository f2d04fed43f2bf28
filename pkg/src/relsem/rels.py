"""Relation composition in five typings, identities, traces and lassos.

Shapes handled here, with ``E`` the event alphabet:

* ``FinRel`` over ``A*B``: plain binary relations (and ``B`` for unary sets)
* :class:`TraceRel`: subsets of ``A × E* × B``
* :class:`TraceSet`: subsets of ``B × E*``
* :class:`OmegaSet`: subsets of ``B × E^ω``, restricted to ultimately
  periodic words written as lassos ``prefix·cycle^ω``

Traces are plain tuples of event labels.
"""

from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass

from .finrel import FinRel, SetValue
from .universe import RelsemError, Sort, SortMismatch, atom_key, render_atom


def _check_trace(trace, events):
    if not isinstance(trace, tuple):
        raise SortMismatch(f"trace must be a tuple, got {trace!r}")
    for e in trace:
        if e not in events:
            raise SortMismatch(f"event {e!r} is not in alphabet {events.name}")


def trace_key(trace):
    return tuple(atom_key(e) for e in trace)


def render_trace(trace):
    return "[" + ",".join(render_atom(e) for e in trace) + "]"


@dataclass(frozen=True)
class Lasso:
    """The ω-word ``prefix · cycle^ω``; build through :func:`canonicalize`."""

    prefix: tuple
    cycle: tuple

    def __str__(self):
        return render_trace(self.prefix) + "(" + ",".join(map(render_atom, self.cycle)) + ")^w"

    def take(self, n):
        """First ``n`` letters of the word."""
        out = list(self.prefix[:n])
        i = 0
        while len(out) < n:
            out.append(self.cycle[i % len(self.cycle)])
            i += 1
        return tuple(out)


def primitive_root(word):
    n = len(word)
    for d in range(1, n + 1):
        if n % d == 0 and word[:d] * (n // d) == word:
            return word[:d]
    return word


def canonicalize(prefix, cycle):
    prefix, cycle = tuple(prefix), tuple(cycle)
    if not cycle:
        raise RelsemError("lasso cycle must be nonempty")
    cycle = primitive_root(cycle)
    while prefix and prefix[-1] == cycle[-1]:
        prefix = prefix[:-1]
        cycle = cycle[-1:] + cycle[:-1]
    return Lasso(prefix, cycle)


def lasso_key(w):
    return (trace_key(w.prefix), trace_key(w.cycle))


@dataclass(frozen=True)
class TraceRel(SetValue):
    src: Sort
    events: Sort
    dst: Sort
    elems: frozenset

    def __post_init__(self):
        object.__setattr__(self, "elems", frozenset(
            (a, tuple(l), b) for a, l, b in self.elems))
        for e in self.elems:
            self.check_elem(e)

    @property
    def shape(self):
        return ("trace-rel", self.src, self.events, self.dst)

    def rebuild(self, elems):
        return TraceRel(self.src, self.events, self.dst, elems)

    def check_elem(self, elem):
        a, l, b = elem
        if a not in self.src or b not in self.dst:
            raise SortMismatch(f"endpoints of {elem!r} not in {self.src.name}/{self.dst.name}")
        _check_trace(l, self.events)

    def elem_key(self, elem):
        a, l, b = elem
        return (atom_key(a), trace_key(l), atom_key(b))

    def render_elem(self, elem):
        a, l, b = elem
        return f"({render_atom(a)},{render_trace(l)},{render_atom(b)})"

    def max_trace_len(self):
        return max((len(l) for _, l, _ in self.elems), default=0)


@dataclass(frozen=True)
class TraceSet(SetValue):
    src: Sort
    events: Sort
    elems: frozenset

    def __post_init__(self):
        object.__setattr__(self, "elems", frozenset((a, tuple(l)) for a, l in self.elems))
        for e in self.elems:
            self.check_elem(e)

    @property
    def shape(self):
        return ("trace-set", self.src, self.events)

    def rebuild(self, elems):
        return TraceSet(self.src, self.events, elems)

    def check_elem(self, elem):
        a, l = elem
        if a not in self.src:
            raise SortMismatch(f"{a!r} is not in sort {self.src.name}")
        _check_trace(l, self.events)

    def elem_key(self, elem):
        a, l = elem
        return (atom_key(a), trace_key(l))

    def render_elem(self, elem):
        a, l = elem
        return f"({render_atom(a)},{render_trace(l)})"

    def max_trace_len(self):
        return max((len(l) for _, l in self.elems), default=0)


@dataclass(frozen=True)
class OmegaSet(SetValue):
    src: Sort
    events: Sort
    elems: frozenset

    def __post_init__(self):
        elems = set()
        for a, w in self.elems:
            if not isinstance(w, Lasso):
                w = canonicalize(*w)
            else:
                w = canonicalize(w.prefix, w.cycle)
            elems.add((a, w))
        object.__setattr__(self, "elems", frozenset(elems))
        for e in self.elems:
            self.check_elem(e)

    @property
    def shape(self):
        return ("omega-set", self.src, self.events)

    def rebuild(self, elems):
        return OmegaSet(self.src, self.events, elems)

    def check_elem(self, elem):
        a, w = elem
        if a not in self.src:
            raise SortMismatch(f"{a!r} is not in sort {self.src.name}")
        _check_trace(w.prefix, self.events)
        _check_trace(w.cycle, self.events)

    def elem_key(self, elem):
        a, w = elem
        return (atom_key(a), lasso_key(w))

    def render_elem(self, elem):
        a, w = elem
        return f"({render_atom(a)},{w})"


def _by_first(elems):
    index = defaultdict(list)
    for e in elems:
        index[e[0]].append(e[1:])
    return index


def _require(cond, msg):
    if not cond:
        raise SortMismatch(msg)


def compose_rr(r: FinRel, s: FinRel) -> FinRel:
    _require(r.arity == 2 and s.arity == 2, "compose_rr expects two binary relations")
    _require(r.sig[1] == s.sig[0],
             f"middle sorts differ: {r.sig[1].name} vs {s.sig[0].name}")
    out = _by_first(s.elems)
    return FinRel((r.sig[0], s.sig[1]),
                  frozenset((a, c) for a, b in r.elems for (c,) in out.get(b, ())))


def compose_rs(r: FinRel, s: FinRel) -> FinRel:
    _require(r.arity == 2 and s.arity == 1, "compose_rs expects a binary and a unary relation")
    _require(r.sig[1] == s.sig[0],
             f"middle sorts differ: {r.sig[1].name} vs {s.sig[0].name}")
    return FinRel((r.sig[0],), frozenset((a,) for a, b in r.elems if (b,) in s.elems))


def _check_traced(r: TraceRel, src: Sort, events: Sort):
    _require(r.dst == src, f"middle sorts differ: {r.dst.name} vs {src.name}")
    _require(r.events == events, "event alphabets differ")


def compose_tt(r: TraceRel, s: TraceRel) -> TraceRel:
    _check_traced(r, s.src, s.events)
    out = _by_first(s.elems)
    return TraceRel(r.src, r.events, s.dst, frozenset(
        (a, l1 + l2, c) for a, l1, b in r.elems for l2, c in out.get(b, ())))


def compose_ts(r: TraceRel, s: TraceSet) -> TraceSet:
    _check_traced(r, s.src, s.events)
    out = _by_first(s.elems)
    return TraceSet(r.src, r.events, frozenset(
        (a, l1 + l2) for a, l1, b in r.elems for (l2,) in out.get(b, ())))


def prepend(trace, w: Lasso) -> Lasso:
    return canonicalize(tuple(trace) + w.prefix, w.cycle)


def compose_tw(r: TraceRel, s: OmegaSet) -> OmegaSet:
    _check_traced(r, s.src, s.events)
    out = _by_first(s.elems)
    return OmegaSet(r.src, r.events, frozenset(
        (a, prepend(l1, w)) for a, l1, b in r.elems for (w,) in out.get(b, ())))


def id_r(sort: Sort) -> FinRel:
    return FinRel((sort, sort), frozenset((a, a) for a in sort.carrier))


def id_t(sort: Sort, events: Sort) -> TraceRel:
    return TraceRel(sort, events, sort, frozenset((a, (), a) for a in sort.carrier))


def omega_agree(u: Lasso, v: Lasso) -> bool:
    """Compare two lassos by unfolding both far enough to decide equality."""
    bound = max(len(u.prefix), len(v.prefix)) + math.lcm(len(u.cycle), len(v.cycle))
    return u.take(bound) == v.take(bound)


def parse_trace(text):
    text = text.strip()
    if not (text.startswith("[") and text.endswith("]")):
        raise ValueError(f"bad trace literal {text!r}")
    body = text[1:-1].strip()
    return tuple(e.strip() for e in body.split(",")) if body else ()


def parse_lasso(text):
    """Parse ``[a](b,c)^w`` into the canonical lasso ``a·(bc)^ω``."""
    text = text.strip()
    if not text.endswith(")^w") or "(" not in text:
        raise ValueError(f"bad lasso literal {text!r}")
    head, cyc = text[:-3].split("(", 1)
    cycle = tuple(e.strip() for e in cyc.split(",") if e.strip())
    return canonicalize(parse_trace(head), cycle)
