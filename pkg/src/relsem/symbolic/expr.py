"""Symbolic set expressions, statements, and their direct evaluation.

A *shape* is a tuple of components, each a sort name or ``ListOf(events)``
for a trace position.  ``("A", "B")`` is a binary relation,
``("A", ListOf("E"), "B")`` a traced relation and ``("B", ListOf("E"))`` a
traced set.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .. import finrel, rels
from ..rels import TraceRel, TraceSet
from ..universe import RelsemError, SortMismatch


@dataclass(frozen=True)
class ListOf:
    events: str = "E"

    def __str__(self):
        return f"list {self.events}"


def is_traced(shape):
    return shape is not None and any(isinstance(c, ListOf) for c in shape)


class SetExpr:
    pass


@dataclass(frozen=True)
class SVar(SetExpr):
    name: str
    shape: tuple


@dataclass(frozen=True)
class Empty(SetExpr):
    shape: tuple | None = None


@dataclass(frozen=True)
class Full(SetExpr):
    shape: tuple | None = None


@dataclass(frozen=True)
class Union(SetExpr):
    left: SetExpr
    right: SetExpr


@dataclass(frozen=True)
class Intersect(SetExpr):
    left: SetExpr
    right: SetExpr


@dataclass(frozen=True)
class FamilyApp(SetExpr):
    """Member ``name i`` of an indexed family, ``i`` bound by an enclosing ⋃/⋂."""

    name: str
    index_var: str
    shape: tuple


@dataclass(frozen=True)
class IndexedUnion(SetExpr):
    var: str
    index_sort: str
    body: SetExpr


@dataclass(frozen=True)
class IndexedIntersect(SetExpr):
    var: str
    index_sort: str
    body: SetExpr


@dataclass(frozen=True)
class ConcatRR(SetExpr):
    left: SetExpr
    right: SetExpr


@dataclass(frozen=True)
class ConcatRS(SetExpr):
    left: SetExpr
    right: SetExpr


@dataclass(frozen=True)
class ConcatTT(SetExpr):
    left: SetExpr
    right: SetExpr


@dataclass(frozen=True)
class ConcatTS(SetExpr):
    left: SetExpr
    right: SetExpr


@dataclass(frozen=True)
class IdR(SetExpr):
    sort: str


@dataclass(frozen=True)
class IdT(SetExpr):
    sort: str
    events: str = "E"


def indexed_union(family, index_sort, shape, var="i"):
    """``⋃ family`` as an expression."""
    return IndexedUnion(var, index_sort, FamilyApp(family, var, shape))


def indexed_intersect(family, index_sort, shape, var="i"):
    return IndexedIntersect(var, index_sort, FamilyApp(family, var, shape))


def compose_shape(left, right):
    """Shape of ``left ∘ right`` and the composition variant, or raise."""
    traced_l, traced_r = is_traced(left), is_traced(right)
    if not traced_l and not traced_r and len(left) == 2:
        if len(right) == 2 and left[1] == right[0]:
            return (left[0], right[1]), ConcatRR
        if len(right) == 1 and left[1] == right[0]:
            return (left[0],), ConcatRS
    if traced_l and traced_r and len(left) == 3 and left[2] == right[0]:
        if len(right) == 3 and right[1] == left[1]:
            return (left[0], left[1], right[2]), ConcatTT
        if len(right) == 2 and right[1] == left[1]:
            return (left[0], left[1]), ConcatTS
    raise SortMismatch(f"cannot compose shapes {fmt_shape(left)} and {fmt_shape(right)}")


def fmt_shape(shape):
    return "*".join(str(c) for c in shape)


def shape_of(e):
    """Shape of ``e``, or None when it cannot be determined bottom-up."""
    if isinstance(e, (SVar, FamilyApp)):
        return e.shape
    if isinstance(e, (Empty, Full)):
        return e.shape
    if isinstance(e, (Union, Intersect)):
        return shape_of(e.left) or shape_of(e.right)
    if isinstance(e, (IndexedUnion, IndexedIntersect)):
        return shape_of(e.body)
    if isinstance(e, (ConcatRR, ConcatRS, ConcatTT, ConcatTS)):
        return compose_shape(shape_of(e.left), shape_of(e.right))[0]
    if isinstance(e, IdR):
        return (e.sort, e.sort)
    if isinstance(e, IdT):
        return (e.sort, ListOf(e.events), e.sort)
    raise TypeError(f"not a set expression: {e!r}")


class Statement:
    pass


@dataclass(frozen=True)
class Equiv(Statement):
    left: SetExpr
    right: SetExpr


@dataclass(frozen=True)
class Included(Statement):
    left: SetExpr
    right: SetExpr


@dataclass(frozen=True)
class Member(Statement):
    """``elem ∈ expr`` for a tuple of constant atoms (traces as tuples)."""

    elem: tuple
    expr: SetExpr


def statement_shape(s):
    if isinstance(s, Member):
        return shape_of(s.expr)
    return shape_of(s.left) or shape_of(s.right)


class UnassignedName(RelsemError):
    pass


@dataclass
class Model:
    universe: object
    sets: dict = field(default_factory=dict)
    families: dict = field(default_factory=dict)

    def sort(self, name):
        return self.universe.sort(name)

    def lookup(self, name):
        try:
            return self.sets[name]
        except KeyError:
            raise UnassignedName(f"set {name} is not assigned in the model") from None

    def family(self, name):
        try:
            return self.families[name]
        except KeyError:
            raise UnassignedName(f"family {name} is not assigned in the model") from None

    def max_trace_len(self):
        values = list(self.sets.values())
        for fam in self.families.values():
            values.extend(fam)
        return max((v.max_trace_len() for v in values if hasattr(v, "max_trace_len")),
                   default=0)

    def empty_of(self, shape):
        if not is_traced(shape):
            return finrel.empty([self.sort(c) for c in shape])
        ev = self.universe.events
        if len(shape) == 3:
            return TraceRel(self.sort(shape[0]), ev, self.sort(shape[2]), frozenset())
        return TraceSet(self.sort(shape[0]), ev, frozenset())


def evaluate(e, model, env=None):
    """Materialise ``e`` as a concrete set value using the set operators."""
    env = env or {}
    if isinstance(e, SVar):
        return model.lookup(e.name)
    if isinstance(e, FamilyApp):
        return model.family(e.name)[env[e.index_var]]
    if isinstance(e, Empty):
        if e.shape is None:
            raise RelsemError("cannot materialise ∅ of unknown shape")
        return model.empty_of(e.shape)
    if isinstance(e, Full):
        if e.shape is None or is_traced(e.shape):
            raise RelsemError("the full set is only finite for untraced shapes")
        return finrel.full([model.sort(c) for c in e.shape])
    if isinstance(e, Union):
        return finrel.union(evaluate(e.left, model, env), evaluate(e.right, model, env))
    if isinstance(e, Intersect):
        return finrel.intersect(evaluate(e.left, model, env), evaluate(e.right, model, env))
    if isinstance(e, (IndexedUnion, IndexedIntersect)):
        op = finrel.union if isinstance(e, IndexedUnion) else finrel.intersect
        result = None
        for i in model.sort(e.index_sort).carrier:
            v = evaluate(e.body, model, {**env, e.var: i})
            result = v if result is None else op(result, v)
        return result
    if isinstance(e, IdR):
        return rels.id_r(model.sort(e.sort))
    if isinstance(e, IdT):
        return rels.id_t(model.sort(e.sort), model.universe.events)
    compose = {ConcatRR: rels.compose_rr, ConcatRS: rels.compose_rs,
               ConcatTT: rels.compose_tt, ConcatTS: rels.compose_ts}.get(type(e))
    if compose is None:
        raise TypeError(f"not a set expression: {e!r}")
    return compose(evaluate(e.left, model, env), evaluate(e.right, model, env))


def holds(s, model):
    """Truth of a statement computed directly with the set operators."""
    if isinstance(s, Member):
        if isinstance(s.expr, Empty):
            return False
        if isinstance(s.expr, Full) and (s.expr.shape is None or is_traced(s.expr.shape)):
            return True
        value = evaluate(s.expr, model)
        return finrel.member(tuple(s.elem), value)
    left, right = evaluate(s.left, model), evaluate(s.right, model)
    if isinstance(s, Equiv):
        return finrel.equiv(left, right)
    if isinstance(s, Included):
        return finrel.included(left, right)
    raise TypeError(f"not a statement: {s!r}")


def trace_len_bound(node, model):
    """Longest trace any element of ``node`` can carry under ``model``.

    Composition concatenates traces, so its bound is the sum of its operands'
    bounds; intersection keeps only common elements, so it takes the minimum.
    """
    if isinstance(node, (Equiv, Included)):
        return max(trace_len_bound(node.left, model), trace_len_bound(node.right, model))
    if isinstance(node, Member):
        return trace_len_bound(node.expr, model)
    if isinstance(node, SVar):
        return getattr(model.lookup(node.name), "max_trace_len", lambda: 0)()
    if isinstance(node, FamilyApp):
        return max((getattr(v, "max_trace_len", lambda: 0)() for v in model.family(node.name)),
                   default=0)
    if isinstance(node, Union):
        return max(trace_len_bound(node.left, model), trace_len_bound(node.right, model))
    if isinstance(node, Intersect):
        return min(trace_len_bound(node.left, model), trace_len_bound(node.right, model))
    if isinstance(node, (IndexedUnion, IndexedIntersect)):
        return trace_len_bound(node.body, model)
    if isinstance(node, (ConcatTT, ConcatTS)):
        return trace_len_bound(node.left, model) + trace_len_bound(node.right, model)
    return 0
