"""Arity-generic finite relations and the set algebra over them.

Every set-like value (plain relations here, and the traced relations and
ω-sets in :mod:`relsem.rels`) derives from :class:`SetValue`: an immutable
set of elements plus a *shape* describing where the elements live.  The
operators below (``union``, ``intersect``, ``included``, ...) only rely on
that interface, so one definition of union serves every kind of set.

A :class:`FinRel` over signature ``[A, B, C]`` is a set of 3-tuples.  The
empty signature is the propositional base case: ``{()}`` is true, ``{}`` is
false.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce

from .universe import (
    DEFAULT_TUPLE_LIMIT,
    RelsemError,
    SizeLimitError,
    SortMismatch,
    Sort,
    check_tuple,
    enumerate_tuples,
    render_atom,
    tuple_key,
    tuple_space_size,
)

DEFAULT_POWERSET_LIMIT = 16


class SetValue:
    """Common interface of every finite set-like value."""

    elems: frozenset

    @property
    def shape(self):
        raise NotImplementedError

    def rebuild(self, elems):
        """A value of the same shape holding ``elems``."""
        raise NotImplementedError

    def check_elem(self, elem):
        raise NotImplementedError

    def elem_key(self, elem):
        raise NotImplementedError

    def render_elem(self, elem):
        raise NotImplementedError

    def sorted_elems(self):
        return sorted(self.elems, key=self.elem_key)

    def __len__(self):
        return len(self.elems)

    def __iter__(self):
        return iter(self.sorted_elems())

    def __contains__(self, elem):
        return elem in self.elems

    def __or__(self, other):
        return union(self, other)

    def __and__(self, other):
        return intersect(self, other)

    def __le__(self, other):
        return included(self, other)

    def dump(self):
        return "\n".join(self.render_elem(e) for e in self.sorted_elems())


@dataclass(frozen=True)
class FinRel(SetValue):
    sig: tuple
    elems: frozenset

    def __post_init__(self):
        object.__setattr__(self, "sig", tuple(self.sig))
        object.__setattr__(self, "elems", frozenset(tuple(t) for t in self.elems))
        for t in self.elems:
            check_tuple(t, self.sig)

    @property
    def shape(self):
        return ("rel", self.sig)

    @property
    def arity(self):
        return len(self.sig)

    def rebuild(self, elems):
        return FinRel(self.sig, elems)

    def check_elem(self, elem):
        check_tuple(elem, self.sig)

    def elem_key(self, elem):
        return tuple_key(elem)

    def render_elem(self, elem):
        return "(" + ",".join(render_atom(a) for a in elem) + ")"

    def dump(self):
        if not self.sig:
            return "true" if self.elems else "false"
        return super().dump()

    def __repr__(self):
        names = "*".join(s.name for s in self.sig)
        return f"FinRel[{names}]{{{', '.join(self.render_elem(e) for e in self)}}}"


def rel(sig, tuples=()):
    """Build a FinRel; 1-ary relations also accept bare atoms."""
    sig = tuple(sig)
    if len(sig) == 1:
        tuples = [t if isinstance(t, tuple) else (t,) for t in tuples]
    return FinRel(sig, frozenset(tuples))


def _same_shape(x, y):
    if type(x) is not type(y) or x.shape != y.shape:
        raise SortMismatch(f"shape mismatch: {x.shape} vs {y.shape}")


def member(t, x):
    x.check_elem(t)
    return t in x.elems


def union(x, y):
    _same_shape(x, y)
    return x.rebuild(x.elems | y.elems)


def intersect(x, y):
    _same_shape(x, y)
    return x.rebuild(x.elems & y.elems)


def included(x, y):
    _same_shape(x, y)
    return x.elems <= y.elems


def equiv(x, y):
    return included(x, y) and included(y, x)


def empty(sig):
    return FinRel(tuple(sig), frozenset())


def empty_like(x):
    return x.rebuild(frozenset())


def full(sig, limit=DEFAULT_TUPLE_LIMIT):
    return FinRel(tuple(sig), frozenset(enumerate_tuples(sig, limit)))


class IndexedFamily:
    """A total map from the atoms of ``index_sort`` to same-shaped sets."""

    def __init__(self, index_sort: Sort, members):
        members = dict(members)
        missing = [i for i in index_sort.carrier if i not in members]
        if missing:
            raise RelsemError(f"family is not total: missing indices {missing}")
        extra = [i for i in members if i not in index_sort]
        if extra:
            raise SortMismatch(f"indices {extra} are not in sort {index_sort.name}")
        values = [members[i] for i in index_sort.carrier]
        for v in values[1:]:
            _same_shape(values[0], v)
        self.index_sort = index_sort
        self.members = members

    def __getitem__(self, index):
        return self.members[index]

    def __iter__(self):
        return (self.members[i] for i in self.index_sort.carrier)

    def map(self, fn):
        return IndexedFamily(self.index_sort, {i: fn(v) for i, v in self.members.items()})


def indexed_union(family):
    return reduce(union, family)


def indexed_intersect(family):
    return reduce(intersect, family)


def _subsets(sig, pred, limit):
    space = enumerate_tuples(sig)
    if len(space) > limit:
        raise SizeLimitError(
            f"powerset of a {len(space)}-tuple space exceeds limit 2^{limit}")
    for mask in range(1 << len(space)):
        s = FinRel(sig, frozenset(t for k, t in enumerate(space) if mask >> k & 1))
        if pred(s):
            yield s


def general_union(pred, sig, limit=DEFAULT_POWERSET_LIMIT):
    """Union of every subset of the tuple space that satisfies ``pred``."""
    sig = tuple(sig)
    return reduce(union, _subsets(sig, pred, limit), empty(sig))


def general_intersect(pred, sig, limit=DEFAULT_POWERSET_LIMIT):
    """Intersection of every qualifying subset; ``full(sig)`` if none qualify."""
    sig = tuple(sig)
    if tuple_space_size(sig) > limit:
        raise SizeLimitError(
            f"powerset of a {tuple_space_size(sig)}-tuple space exceeds limit 2^{limit}")
    return reduce(intersect, _subsets(sig, pred, limit), full(sig))


def distinguishing_elem(x, y):
    """Smallest element in exactly one of ``x`` and ``y``, or None."""
    diff = x.elems ^ y.elems
    if not diff:
        return None
    return min(diff, key=x.elem_key)
