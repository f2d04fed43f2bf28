"""Kleene iteration on the powerset lattice of a finite tuple space.

The lattice is ``(P(A1 × ... × An), ⊆)``.  Because its height is the size of
the tuple space, iterating a monotone map from the bottom (or the top) must
stabilise within ``|space| + 1`` applications; exceeding that bound is taken
as proof that the map was not monotone.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from .finrel import FinRel, empty, equiv, full, included, indexed_union, union
from .universe import RelsemError, tuple_space_size


class NonMonotoneError(RelsemError):
    pass


@dataclass(frozen=True)
class MonotoneMap:
    sig: tuple
    apply: Callable[[FinRel], FinRel]

    def __call__(self, x):
        return self.apply(x)


@dataclass
class Report:
    name: str
    checked: int = 0
    violations: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.violations

    def __str__(self):
        status = "PASS" if self.ok else "FAIL"
        line = f"{status} {self.name} ({self.checked} checks)"
        if self.violations:
            line += ": " + self.violations[0]
        return line


def kleene(f: MonotoneMap, start: FinRel):
    """Iterate ``f`` from ``start`` until it stabilises.

    Returns the limit and the number of applications of ``f``.
    """
    bound = tuple_space_size(f.sig) + 1
    x = start
    for n in range(1, bound + 1):
        nxt = f(x)
        if nxt == x:
            return x, n
        x = nxt
    raise NonMonotoneError(
        f"no fixed point after {bound} iterations; the map is not monotone")


def lfp_with_count(f: MonotoneMap):
    return kleene(f, empty(f.sig))


def gfp_with_count(f: MonotoneMap):
    return kleene(f, full(f.sig))


def lfp(f: MonotoneMap) -> FinRel:
    return lfp_with_count(f)[0]


def gfp(f: MonotoneMap) -> FinRel:
    return gfp_with_count(f)[0]


def check_partial_order(sig, samples) -> Report:
    """Reflexivity, antisymmetry and transitivity of ⊆ over ``samples``."""
    report = Report("partial order")
    samples = list(samples)
    for x in samples:
        report.checked += 1
        if not included(x, x):
            report.violations.append(f"not reflexive at {x!r}")
    for x in samples:
        for y in samples:
            report.checked += 1
            if included(x, y) and included(y, x) and not equiv(x, y):
                report.violations.append(f"not antisymmetric at {x!r}, {y!r}")
            for z in samples:
                if included(x, y) and included(y, z) and not included(x, z):
                    report.violations.append(f"not transitive at {x!r}, {y!r}, {z!r}")
    return report


def check_lub(sig, family, upper_bounds=None) -> Report:
    """The union of ``family`` is an upper bound below every other upper bound.

    Without explicit ``upper_bounds`` the candidates are the union itself,
    every one-tuple extension of it, and the full relation.
    """
    report = Report("least upper bound")
    family = list(family)
    lub = indexed_union(family) if family else empty(sig)
    for x in family:
        report.checked += 1
        if not included(x, lub):
            report.violations.append(f"{x!r} is not below the union {lub!r}")
    if upper_bounds is None:
        top = full(sig)
        upper_bounds = [lub, top] + [
            union(lub, FinRel(sig, {t})) for t in top.elems - lub.elems]
    for u in upper_bounds:
        if all(included(x, u) for x in family):
            report.checked += 1
            if not included(lub, u):
                report.violations.append(f"union {lub!r} is not below upper bound {u!r}")
    return report


def check_monotone(f: MonotoneMap, samples) -> Report:
    report = Report("monotone")
    samples = list(samples)
    for x in samples:
        for y in samples:
            if included(x, y):
                report.checked += 1
                if not included(f(x), f(y)):
                    report.violations.append(f"{x!r} ⊆ {y!r} but images are not ordered")
    return report


def check_least(f: MonotoneMap, fixed, samples) -> Report:
    """``fixed`` is a fixed point below every sampled pre-fixed point."""
    report = Report("least fixed point")
    report.checked += 1
    if f(fixed) != fixed:
        report.violations.append(f"{fixed!r} is not a fixed point")
    for x in samples:
        if included(f(x), x):
            report.checked += 1
            if not included(fixed, x):
                report.violations.append(f"pre-fixed point {x!r} is not above {fixed!r}")
    return report
