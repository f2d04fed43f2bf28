"""The law catalog, checked on seeded random finite instances.

Each law draws one random instance per case from its own ``random.Random``
seeded with ``"{seed}/{law}/{case}"``, so reports are reproducible and
independent of the order in which laws run.

Random instances: carriers of size 1..4, tuples included with probability
0.5, traces over a two-letter alphabet with geometric length (mean 2, capped
at 4), lassos with prefix length 0..2 and cycle length 1..2.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Callable

from . import finrel, lattice, rels
from .finrel import FinRel, IndexedFamily, equiv, included, intersect, union
from .rels import OmegaSet, TraceRel, TraceSet, canonicalize
from .symbolic import expr as E
from .symbolic.formula import check_soundness, render_statement
from .universe import Sort, Universe, enumerate_tuples

EVENTS = Sort("E", ("a", "b"))
MAX_CARRIER = 4


# ---------------------------------------------------------------- generators


def random_sort(rng, name, max_size=MAX_CARRIER):
    return Sort(name, tuple(range(rng.randint(1, max_size))))


def random_rel(rng, sig, density=0.5):
    return FinRel(tuple(sig), frozenset(
        t for t in enumerate_tuples(sig) if rng.random() < density))


def random_trace(rng, events=EVENTS, cap=4):
    trace = []
    while len(trace) < cap and rng.random() < 2 / 3:
        trace.append(rng.choice(events.carrier))
    return tuple(trace)


def random_trace_rel(rng, src, dst, events=EVENTS, cap=4):
    triples = set()
    for a in src.carrier:
        for b in dst.carrier:
            if rng.random() < 0.5:
                for _ in range(rng.randint(1, 2)):
                    triples.add((a, random_trace(rng, events, cap), b))
    return TraceRel(src, events, dst, frozenset(triples))


def random_trace_set(rng, src, events=EVENTS, cap=4):
    pairs = set()
    for a in src.carrier:
        if rng.random() < 0.5:
            for _ in range(rng.randint(1, 2)):
                pairs.add((a, random_trace(rng, events, cap)))
    return TraceSet(src, events, frozenset(pairs))


def random_lasso(rng, events=EVENTS):
    prefix = [rng.choice(events.carrier) for _ in range(rng.randint(0, 2))]
    cycle = [rng.choice(events.carrier) for _ in range(rng.randint(1, 2))]
    return canonicalize(prefix, cycle)


def random_omega_set(rng, src, events=EVENTS):
    pairs = set()
    for a in src.carrier:
        if rng.random() < 0.5:
            for _ in range(rng.randint(1, 2)):
                pairs.add((a, random_lasso(rng, events)))
    return OmegaSet(src, events, frozenset(pairs))


@dataclass
class Sorts:
    A: Sort
    B: Sort
    C: Sort
    D: Sort
    I: Sort

    @classmethod
    def draw(cls, rng):
        return cls(*(random_sort(rng, n) for n in "ABCD"), random_sort(rng, "I", 3))


# The five composition typings: (left operand, right operand, compose).
VARIANTS = {
    "rr": (lambda r, s: random_rel(r, [s.A, s.B]),
           lambda r, s: random_rel(r, [s.B, s.C]), rels.compose_rr),
    "rs": (lambda r, s: random_rel(r, [s.A, s.B]),
           lambda r, s: random_rel(r, [s.B]), rels.compose_rs),
    "tt": (lambda r, s: random_trace_rel(r, s.A, s.B),
           lambda r, s: random_trace_rel(r, s.B, s.C), rels.compose_tt),
    "ts": (lambda r, s: random_trace_rel(r, s.A, s.B),
           lambda r, s: random_trace_set(r, s.B), rels.compose_ts),
    "tw": (lambda r, s: random_trace_rel(r, s.A, s.B),
           lambda r, s: random_omega_set(r, s.B), rels.compose_tw),
}

# Associativity cases: generators for x, y, z and the compositions used for
# x∘y, (x∘y)∘z, y∘z and x∘(y∘z).
ASSOC_CASES = {
    1: ("rr", lambda r, s: random_rel(r, [s.C, s.D]),
        rels.compose_rr, rels.compose_rr, rels.compose_rr, rels.compose_rr),
    2: ("rr", lambda r, s: random_rel(r, [s.C]),
        rels.compose_rr, rels.compose_rs, rels.compose_rs, rels.compose_rs),
    3: ("tt", lambda r, s: random_trace_rel(r, s.C, s.D),
        rels.compose_tt, rels.compose_tt, rels.compose_tt, rels.compose_tt),
    4: ("tt", lambda r, s: random_trace_set(r, s.C),
        rels.compose_tt, rels.compose_ts, rels.compose_ts, rels.compose_ts),
    5: ("tt", lambda r, s: random_omega_set(r, s.C),
        rels.compose_tt, rels.compose_tw, rels.compose_tw, rels.compose_tw),
}


def random_set_value(rng, s):
    """A random value of a random kind, plus a generator for more of that shape."""
    kind = rng.randrange(4)
    if kind == 0:
        sig = [s.A, s.B, s.C][: rng.randint(0, 3)]
        make = lambda: random_rel(rng, sig)
    elif kind == 1:
        make = lambda: random_trace_rel(rng, s.A, s.B)
    elif kind == 2:
        make = lambda: random_trace_set(rng, s.A)
    else:
        make = lambda: random_omega_set(rng, s.A)
    return make


def random_family(rng, index_sort, make):
    return IndexedFamily(index_sort, {i: make() for i in index_sort.carrier})


def describe(value):
    return "{" + ", ".join(value.render_elem(e) for e in value) + "}"


def differ(lhs, rhs, **operands):
    """None when ``lhs == rhs``, else a counterexample description."""
    if equiv(lhs, rhs):
        return None
    elem = finrel.distinguishing_elem(lhs, rhs)
    side = "left" if elem in lhs.elems else "right"
    ops = " ".join(f"{k}={describe(v)}" for k, v in operands.items())
    return f"{lhs.render_elem(elem)} only on the {side} side; {ops}"


# ---------------------------------------------------------------------- laws


def union_comm(rng):
    s = Sorts.draw(rng)
    make = random_set_value(rng, s)
    x, y = make(), make()
    return differ(union(x, y), union(y, x), x=x, y=y)


def union_assoc(rng):
    s = Sorts.draw(rng)
    make = random_set_value(rng, s)
    x, y, z = make(), make(), make()
    return differ(union(union(x, y), z), union(x, union(y, z)), x=x, y=y, z=z)


def intersect_comm(rng):
    s = Sorts.draw(rng)
    make = random_set_value(rng, s)
    x, y = make(), make()
    return differ(intersect(x, y), intersect(y, x), x=x, y=y)


def intersect_assoc(rng):
    s = Sorts.draw(rng)
    make = random_set_value(rng, s)
    x, y, z = make(), make(), make()
    return differ(intersect(intersect(x, y), z), intersect(x, intersect(y, z)),
                  x=x, y=y, z=z)


def concat_assoc(case):
    variant, make_z, xy, xy_z, yz, x_yz = ASSOC_CASES[case]
    make_x, make_y, _ = VARIANTS[variant]

    def law(rng):
        s = Sorts.draw(rng)
        x, y, z = make_x(rng, s), make_y(rng, s), make_z(rng, s)
        return differ(xy_z(xy(x, y), z), x_yz(x, yz(y, z)), x=x, y=y, z=z)
    return law


def union_distr_r(variant):
    make_x, make_y, comp = VARIANTS[variant]

    def law(rng):
        s = Sorts.draw(rng)
        x1, x2, y = make_x(rng, s), make_x(rng, s), make_y(rng, s)
        return differ(comp(union(x1, x2), y), union(comp(x1, y), comp(x2, y)),
                      x1=x1, x2=x2, y=y)
    return law


def union_distr_l(variant):
    make_x, make_y, comp = VARIANTS[variant]

    def law(rng):
        s = Sorts.draw(rng)
        x, y1, y2 = make_x(rng, s), make_y(rng, s), make_y(rng, s)
        return differ(comp(x, union(y1, y2)), union(comp(x, y1), comp(x, y2)),
                      x=x, y1=y1, y2=y2)
    return law


def indexed_distr_r(variant):
    make_x, make_y, comp = VARIANTS[variant]

    def law(rng):
        s = Sorts.draw(rng)
        xs = random_family(rng, s.I, lambda: make_x(rng, s))
        y = make_y(rng, s)
        return differ(comp(finrel.indexed_union(xs), y),
                      finrel.indexed_union(xs.map(lambda xi: comp(xi, y))), y=y)
    return law


def indexed_distr_l(variant):
    make_x, make_y, comp = VARIANTS[variant]

    def law(rng):
        s = Sorts.draw(rng)
        x = make_x(rng, s)
        ys = random_family(rng, s.I, lambda: make_y(rng, s))
        return differ(comp(x, finrel.indexed_union(ys)),
                      finrel.indexed_union(ys.map(lambda yi: comp(x, yi))), x=x)
    return law


# id on the left: id ∘ y == y for every typing; on the right for rr and tt.
_ID_LEFT = {
    "rr": lambda r, s: (rels.id_r(s.A), random_rel(r, [s.A, s.B]), rels.compose_rr),
    "rs": lambda r, s: (rels.id_r(s.A), random_rel(r, [s.A]), rels.compose_rs),
    "tt": lambda r, s: (rels.id_t(s.A, EVENTS), random_trace_rel(r, s.A, s.B), rels.compose_tt),
    "ts": lambda r, s: (rels.id_t(s.A, EVENTS), random_trace_set(r, s.A), rels.compose_ts),
    "tw": lambda r, s: (rels.id_t(s.A, EVENTS), random_omega_set(r, s.A), rels.compose_tw),
}


def id_left(variant):
    def law(rng):
        s = Sorts.draw(rng)
        ident, y, comp = _ID_LEFT[variant](rng, s)
        return differ(comp(ident, y), y, y=y)
    return law


def id_right(variant):
    def law(rng):
        s = Sorts.draw(rng)
        if variant == "rr":
            x = random_rel(rng, [s.A, s.B])
            return differ(rels.compose_rr(x, rels.id_r(s.B)), x, x=x)
        x = random_trace_rel(rng, s.A, s.B)
        return differ(rels.compose_tt(x, rels.id_t(s.B, EVENTS)), x, x=x)
    return law


def id_membership(rng):
    """(a, b) ∈ id <-> a = b  and  (a, l, b) ∈ id <-> a = b /\\ l = nil."""
    s = Sorts.draw(rng)
    ir, it = rels.id_r(s.A), rels.id_t(s.A, EVENTS)
    for a in s.A.carrier:
        for b in s.A.carrier:
            if finrel.member((a, b), ir) != (a == b):
                return f"({a},{b}) misclassified by id"
            for _ in range(3):
                l = random_trace(rng)
                if finrel.member((a, l, b), it) != (a == b and l == ()):
                    return f"({a},{rels.render_trace(l)},{b}) misclassified by traced id"
    return None


def intersect_indexed_union(rng):
    s = Sorts.draw(rng)
    make = random_set_value(rng, s)
    x = make()
    ys = random_family(rng, s.I, make)
    return differ(intersect(x, finrel.indexed_union(ys)),
                  finrel.indexed_union(ys.map(lambda yn: intersect(x, yn))), x=x)


def inclusion_antisymm(rng):
    s = Sorts.draw(rng)
    x = random_rel(rng, [s.A, s.A])
    y = x if rng.random() < 0.5 else random_rel(rng, [s.A, s.A])
    if included(x, y) and included(y, x) and not equiv(x, y):
        return f"x={describe(x)} y={describe(y)} are mutually included but differ"
    return None


def partial_order(rng):
    s = Sorts.draw(rng)
    sig = [s.A, s.B]
    base = random_rel(rng, sig)
    samples = [base, union(base, random_rel(rng, sig)), intersect(base, random_rel(rng, sig)),
               random_rel(rng, sig), finrel.full(sig), finrel.empty(sig)]
    report = lattice.check_partial_order(sig, samples)
    return None if report.ok else report.violations[0]


def least_upper_bound(rng):
    s = Sorts.draw(rng)
    sig = [s.A, s.B]
    family = [random_rel(rng, sig) for _ in range(rng.randint(1, 4))]
    report = lattice.check_lub(sig, family)
    return None if report.ok else report.violations[0]


def random_monotone_map(rng, sort):
    """A random map on ``sort × sort`` built from ∘, ∪ and ∩ of fixed relations."""
    sig = (sort, sort)
    r1, r2, base = (random_rel(rng, sig, rng.choice([0.2, 0.4])) for _ in range(3))
    terms = rng.sample(["r1x", "xr2", "xx", "xr1r2", "xmeet"], rng.randint(1, 3))

    def apply(x):
        out = base
        for t in terms:
            if t == "r1x":
                out = union(out, rels.compose_rr(r1, x))
            elif t == "xr2":
                out = union(out, rels.compose_rr(x, r2))
            elif t == "xx":
                out = union(out, rels.compose_rr(x, x))
            elif t == "xr1r2":
                out = union(out, rels.compose_rr(rels.compose_rr(x, r1), r2))
            else:
                out = union(out, intersect(x, r2))
        return out
    return lattice.MonotoneMap(sig, apply)


def prefixed_points(rng, f, count=4):
    """Pre-fixed points (f(x) ⊆ x) obtained by closing random seeds under f."""
    points = [finrel.full(f.sig)]
    for _ in range(count):
        x = random_rel(rng, f.sig, rng.random())
        while True:
            nxt = union(x, f(x))
            if nxt == x:
                break
            x = nxt
        points.append(x)
    return points


def kleene_lfp(rng):
    s = Sorts.draw(rng)
    f = random_monotone_map(rng, s.A)
    fixed, n = lattice.lfp_with_count(f)
    bound = len(s.A) ** 2 + 1
    if n > bound:
        return f"{n} iterations exceed the bound {bound}"
    report = lattice.check_least(f, fixed, prefixed_points(rng, f))
    return None if report.ok else report.violations[0]


def general_union_oracle(rng):
    s = Sorts.draw(rng)
    sig = [s.A, s.B][: rng.randint(1, 2)]
    space = enumerate_tuples(sig)
    if len(space) > 8:
        sig, space = sig[:1], enumerate_tuples(sig[:1])
    must = set(rng.sample(space, rng.randint(0, min(2, len(space)))))
    pred = lambda x: must <= x.elems and len(x) <= len(space) - 1
    expected = finrel.empty(sig)
    for k in range(len(space) + 1):
        for combo in itertools.combinations(space, k):
            candidate = FinRel(tuple(sig), frozenset(combo))
            if pred(candidate):
                expected = union(expected, candidate)
    return differ(finrel.general_union(pred, sig), expected)


# ------------------------------------------------------- unfold soundness


class StatementGen:
    """Random (statement, model) pairs over small carriers."""

    def __init__(self, rng, max_carrier=3, trace_cap=2):
        self.rng = rng
        self.trace_cap = trace_cap
        self.sorts = {n: random_sort(rng, n, max_carrier) for n in "ABC"}
        self.sorts["I"] = random_sort(rng, "I", 2)
        self.universe = Universe(self.sorts, (), EVENTS, {})
        self.model = E.Model(self.universe)
        self.lst = E.ListOf(EVENTS.name)
        self.count = 0

    def fresh(self, prefix):
        self.count += 1
        return f"{prefix}{self.count}"

    def value(self, shape):
        rng, sort = self.rng, self.universe.sort
        if not E.is_traced(shape):
            return random_rel(rng, [sort(c) for c in shape])
        if len(shape) == 3:
            return random_trace_rel(rng, sort(shape[0]), sort(shape[2]), cap=self.trace_cap)
        return random_trace_set(rng, sort(shape[0]), cap=self.trace_cap)

    def var(self, shape):
        name = self.fresh("X")
        self.model.sets[name] = self.value(shape)
        return E.SVar(name, shape)

    def expr(self, shape, depth, index_vars=()):
        rng = self.rng
        traced = E.is_traced(shape)
        options = ["var", "var", "empty"]
        if not traced:
            options.append("full")
        if depth > 0:
            options += ["union", "inter", "concat", "concat", "indexed"]
        if index_vars:
            options.append("family")
        if len(shape) >= 2 and shape[0] == shape[-1] and (traced or len(shape) == 2):
            options.append("id")
        kind = rng.choice(options)
        if kind == "var":
            return self.var(shape)
        if kind == "empty":
            return E.Empty(shape)
        if kind == "full":
            return E.Full(shape)
        if kind == "id":
            return E.IdT(shape[0], EVENTS.name) if traced else E.IdR(shape[0])
        if kind == "family":
            return self.family_app(shape, rng.choice(index_vars))
        if kind in ("union", "inter"):
            cls = E.Union if kind == "union" else E.Intersect
            return cls(self.expr(shape, depth - 1, index_vars),
                       self.expr(shape, depth - 1, index_vars))
        if kind == "indexed":
            var = f"n{len(index_vars)}"
            body = self.expr(shape, depth - 1, index_vars + (var,))
            body = E.Intersect(body, self.family_app(shape, var)) if rng.random() < 0.5 \
                else E.Union(self.family_app(shape, var), body)
            cls = E.IndexedUnion if rng.random() < 0.6 else E.IndexedIntersect
            return cls(var, "I", body)
        return self.concat(shape, depth, index_vars)

    def family_app(self, shape, var):
        name = self.fresh("F")
        index = self.sorts["I"]
        self.model.families[name] = IndexedFamily(
            index, {i: self.value(shape) for i in index.carrier})
        return E.FamilyApp(name, var, shape)

    def concat(self, shape, depth, index_vars):
        mid = self.rng.choice("ABC")
        traced = E.is_traced(shape)
        if not traced and len(shape) == 2:
            left, right, cls = (shape[0], mid), (mid, shape[1]), E.ConcatRR
        elif not traced and len(shape) == 1:
            left, right, cls = (shape[0], mid), (mid,), E.ConcatRS
        elif len(shape) == 3:
            left, right, cls = (shape[0], self.lst, mid), (mid, self.lst, shape[2]), E.ConcatTT
        else:
            left, right, cls = (shape[0], self.lst, mid), (mid, self.lst), E.ConcatTS
        return cls(self.expr(left, depth - 1, index_vars), self.expr(right, depth - 1, index_vars))

    def shape(self):
        rng = self.rng
        a, b = rng.choice("ABC"), rng.choice("ABC")
        return rng.choice([(a,), (a, b), (a, b), (a, self.lst, b), (a, self.lst)])

    def elem(self, shape):
        out = []
        for c in shape:
            if isinstance(c, E.ListOf):
                out.append(random_trace(self.rng, cap=self.trace_cap * 2))
            else:
                out.append(self.rng.choice(self.sorts[c].carrier))
        return tuple(out)

    def statement(self):
        rng = self.rng
        shape = self.shape()
        depth = 2 if E.is_traced(shape) else 3
        left = self.expr(shape, depth)
        kind = rng.choice(["equiv", "included", "member"])
        if kind == "member":
            return E.Member(self.elem(shape), left)
        # bias towards true statements by reusing the left side
        right = left if rng.random() < 0.3 else self.expr(shape, depth)
        if rng.random() < 0.3:
            right = E.Union(right, left) if kind == "included" else E.Union(left, left)
        cls = E.Equiv if kind == "equiv" else E.Included
        return cls(left, right)


def unfold_soundness(rng):
    gen = StatementGen(rng)
    stmt = gen.statement()
    direct, via_formula = check_soundness(stmt, gen.model)
    if direct != via_formula:
        return f"{render_statement(stmt)}: direct={direct} unfolded={via_formula}"
    return None


# ------------------------------------------------------------------ catalog


@dataclass
class Law:
    name: str
    check: Callable[[random.Random], str | None]
    group: str = "algebra"


def catalog():
    laws = [
        Law("Sets_union_comm", union_comm),
        Law("Sets_union_assoc", union_assoc),
        Law("Sets_intersect_comm", intersect_comm),
        Law("Sets_intersect_assoc", intersect_assoc),
    ]
    laws += [Law(f"Rels_concat_assoc[case{k}]", concat_assoc(k)) for k in ASSOC_CASES]
    for v in VARIANTS:
        laws.append(Law(f"Rels_concat_union_distr_r[{v}]", union_distr_r(v)))
        laws.append(Law(f"Rels_concat_union_distr_l[{v}]", union_distr_l(v)))
    for v in VARIANTS:
        laws.append(Law(f"Rels_concat_indexed_union_distr_r[{v}]", indexed_distr_r(v)))
        laws.append(Law(f"Rels_concat_indexed_union_distr_l[{v}]", indexed_distr_l(v)))
    laws += [Law(f"Rels_concat_id_l[{v}]", id_left(v)) for v in _ID_LEFT]
    laws += [Law(f"Rels_concat_id_r[{v}]", id_right(v)) for v in ("rr", "tt")]
    laws.append(Law("Rels_id_membership", id_membership))
    laws.append(Law("Sets_intersect_indexed_union_distr", intersect_indexed_union))
    laws.append(Law("relation_inclusion_antisymm", inclusion_antisymm, "lattice"))
    laws.append(Law("Sets_included_partial_order", partial_order, "lattice"))
    laws.append(Law("Sets_union_least_upper_bound", least_upper_bound, "lattice"))
    laws.append(Law("Kleene_lfp_least", kleene_lfp, "lattice"))
    laws.append(Law("Sets_general_union_oracle", general_union_oracle, "lattice"))
    laws.append(Law("Sets_unfold_sound", unfold_soundness, "unfold"))
    return laws


@dataclass
class LawResult:
    name: str
    cases: int
    failures: int = 0
    counterexample: str | None = None
    passed_cases: int = field(default=0)

    @property
    def ok(self):
        return self.failures == 0

    def line(self):
        if self.ok:
            return f"PASS {self.name} ({self.cases} cases)"
        return (f"FAIL {self.name} ({self.failures}/{self.cases} cases failed) "
                f"counterexample: {self.counterexample}")


def run_law(law, seed, cases):
    result = LawResult(law.name, cases)
    for i in range(cases):
        rng = random.Random(f"{seed}/{law.name}/{i}")
        cex = law.check(rng)
        if cex is None:
            result.passed_cases += 1
        else:
            result.failures += 1
            if result.counterexample is None:
                result.counterexample = f"case {i}: {cex}"
    return result


def run_laws(seed=0, cases=1000, laws=None, groups=None):
    laws = catalog() if laws is None else laws
    if groups is not None:
        laws = [law for law in laws if law.group in groups]
    return [run_law(law, seed, cases) for law in laws]


def report(results):
    passed = sum(r.ok for r in results)
    lines = [r.line() for r in results]
    lines.append(f"{passed}/{len(results)} laws passed")
    return "\n".join(lines)
