"""Pointwise first-order formulas: unfolding, evaluation and rendering.

``unfold`` rewrites ``==``, ``⊆`` and ``∈`` over a set expression into a
formula whose only atoms are memberships of tuples in *named* sets, equalities
and trace splits.  The rewrite is structural: each operator is replaced by its
pointwise meaning (∪ by ∨, ∘ by an existential witness, ...), so the output
is linear in the size of the input.

Bound variables are named after their sort (``B`` gives ``b``; anything else
gives ``a``) and freshened Coq-style (``a``, ``a0``, ``a1``, ...), so the
rendered goals read the way they do in a proof assistant session.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass

from ..universe import RelsemError
from . import expr as E

DEFAULT_TRACE_CAP = 200_000


class Formula:
    pass


@dataclass(frozen=True)
class TVar:
    name: str


@dataclass(frozen=True)
class TConst:
    value: object


@dataclass(frozen=True)
class FamilyRef:
    name: str
    index: TVar


@dataclass(frozen=True)
class Forall(Formula):
    binders: tuple  # of (name, type); type is a sort name or ListOf
    body: Formula


@dataclass(frozen=True)
class Exists(Formula):
    binders: tuple
    body: Formula


@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Or(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Implies(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Iff(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Not(Formula):
    arg: Formula


@dataclass(frozen=True)
class TrueF(Formula):
    pass


@dataclass(frozen=True)
class FalseF(Formula):
    pass


@dataclass(frozen=True)
class MemAtom(Formula):
    terms: tuple
    target: object  # set name or FamilyRef


@dataclass(frozen=True)
class EqAtom(Formula):
    left: object
    right: object


@dataclass(frozen=True)
class TraceEqAtom(Formula):
    """``lhs = p1 ++ p2 ++ ...``; no parts means ``lhs = nil``."""

    lhs: object
    parts: tuple


# ---------------------------------------------------------------- unfolding


def base_name(typ):
    if isinstance(typ, E.ListOf):
        return "l"
    if len(typ) == 1 and typ.isupper():
        return typ.lower()
    return "a"


def fresh(base, scope):
    if base not in scope:
        return base
    stem, digits = re.fullmatch(r"(.*?)(\d*)", base).groups()
    k = int(digits) + 1 if digits else 0
    while f"{stem}{k}" in scope:
        k += 1
    return f"{stem}{k}"


def _free_names(node, acc):
    if isinstance(node, (E.SVar, E.FamilyApp)):
        acc.add(node.name)
    for name in getattr(node, "__dataclass_fields__", {}):
        child = getattr(node, name)
        if isinstance(child, (E.SetExpr, E.Statement)):
            _free_names(child, acc)
    return acc


def unfold(s: E.Statement) -> Formula:
    scope = frozenset(_free_names(s, set()))
    if isinstance(s, E.Member):
        terms = tuple(TConst(v) for v in s.elem)
        return _mem(s.expr, terms, scope, {})
    shape = E.statement_shape(s)
    if shape is None:
        raise RelsemError("cannot determine the signature of the statement")
    binders = []
    for typ in shape:
        name = fresh(base_name(typ), scope | {n for n, _ in binders})
        binders.append((name, typ))
    scope = scope | {n for n, _ in binders}
    terms = tuple(TVar(n) for n, _ in binders)
    left = _mem(s.left, terms, scope, {})
    right = _mem(s.right, terms, scope, {})
    body = Iff(left, right) if isinstance(s, E.Equiv) else Implies(left, right)
    return Forall(tuple(binders), body)


def _mem(e, terms, scope, env):
    """Formula stating ``terms ∈ e``."""
    if isinstance(e, E.SVar):
        return MemAtom(terms, e.name)
    if isinstance(e, E.FamilyApp):
        return MemAtom(terms, FamilyRef(e.name, TVar(env[e.index_var])))
    if isinstance(e, E.Empty):
        return FalseF()
    if isinstance(e, E.Full):
        return TrueF()
    if isinstance(e, E.Union):
        return Or(_mem(e.left, terms, scope, env), _mem(e.right, terms, scope, env))
    if isinstance(e, E.Intersect):
        return And(_mem(e.left, terms, scope, env), _mem(e.right, terms, scope, env))
    if isinstance(e, (E.IndexedUnion, E.IndexedIntersect)):
        n = fresh(e.var, scope)
        body = _mem(e.body, terms, scope | {n}, {**env, e.var: n})
        quant = Exists if isinstance(e, E.IndexedUnion) else Forall
        return quant(((n, e.index_sort),), body)
    if isinstance(e, E.IdR):
        return EqAtom(terms[0], terms[1])
    if isinstance(e, E.IdT):
        return And(EqAtom(terms[0], terms[2]), TraceEqAtom(terms[1], ()))
    if isinstance(e, (E.ConcatRR, E.ConcatRS)):
        mid = E.shape_of(e.left)[1]
        b = fresh(base_name(mid), scope)
        inner = scope | {b}
        left = _mem(e.left, (terms[0], TVar(b)), inner, env)
        right = _mem(e.right, (TVar(b),) + terms[1:], inner, env)
        return Exists(((b, mid),), And(left, right))
    if isinstance(e, (E.ConcatTT, E.ConcatTS)):
        lshape = E.shape_of(e.left)
        mid, lst = lshape[2], lshape[1]
        b = fresh(base_name(mid), scope)
        l1 = fresh("l1", scope | {b})
        l2 = fresh("l2", scope | {b, l1})
        inner = scope | {b, l1, l2}
        left = _mem(e.left, (terms[0], TVar(l1), TVar(b)), inner, env)
        right = _mem(e.right, (TVar(b), TVar(l2)) + terms[2:], inner, env)
        split = TraceEqAtom(terms[1], (TVar(l1), TVar(l2)))
        return Exists(((b, mid), (l1, lst), (l2, lst)), And(left, And(right, split)))
    raise TypeError(f"not a set expression: {e!r}")


# --------------------------------------------------------------- evaluation


class TraceDomainOverflow(RelsemError):
    pass


def count_trace_splits(f):
    if isinstance(f, TraceEqAtom):
        return 1 if len(f.parts) >= 2 else 0
    total = 0
    for name in getattr(f, "__dataclass_fields__", {}):
        child = getattr(f, name)
        if isinstance(child, Formula):
            total += count_trace_splits(child)
    return total


def trace_bound(f, model):
    """Length bound for trace quantifiers when only the formula is known.

    A formula with ``k`` trace splits only relates traces assembled from at
    most ``k + 1`` stored traces, so longer traces make every membership
    atom false.  Unfolded statements get the tighter structural bound of
    :func:`relsem.symbolic.expr.trace_len_bound`.
    """
    return model.max_trace_len() * (count_trace_splits(f) + 1)


def all_traces(events, bound, cap=DEFAULT_TRACE_CAP):
    size = sum(len(events) ** k for k in range(bound + 1))
    if size > cap:
        raise TraceDomainOverflow(f"{size} traces up to length {bound} exceed cap {cap}")
    out = []
    for k in range(bound + 1):
        out.extend(itertools.product(events, repeat=k))
    return out


def eval_formula(f, model, trace_cap=DEFAULT_TRACE_CAP, bound=None):
    if bound is None:
        bound = trace_bound(f, model)
    ctx = _EvalContext(model, bound, trace_cap)
    return ctx.eval(f, {})


def _splits(trace, n):
    if n == 1:
        yield (trace,)
        return
    for k in range(len(trace) + 1):
        for rest in _splits(trace[k:], n - 1):
            yield (trace[:k],) + rest


def _conjuncts(f):
    if isinstance(f, And):
        return _conjuncts(f.left) + _conjuncts(f.right)
    return [f]


class _EvalContext:
    def __init__(self, model, bound, cap):
        self.model = model
        self.bound = bound
        self.cap = cap
        self._traces = None

    def traces(self):
        if self._traces is None:
            events = self.model.universe.events
            self._traces = all_traces(events.carrier if events else (), self.bound, self.cap)
        return self._traces

    def term(self, t, env):
        if isinstance(t, TConst):
            return t.value
        try:
            return env[t.name]
        except KeyError:
            raise RelsemError(f"unbound variable {t.name}") from None

    def domain(self, typ):
        if isinstance(typ, E.ListOf):
            return self.traces()
        return self.model.sort(typ).carrier

    def assignments(self, binders, body, env):
        """Candidate bindings; trace splits of a bound trace are enumerated directly."""
        names = {n for n, _ in binders}
        split_vars = None
        for c in _conjuncts(body):
            if (isinstance(c, TraceEqAtom) and len(c.parts) >= 2
                    and isinstance(c.lhs, (TConst, TVar))
                    and (isinstance(c.lhs, TConst) or c.lhs.name in env)
                    and all(isinstance(p, TVar) and p.name in names for p in c.parts)
                    and len({p.name for p in c.parts}) == len(c.parts)):
                split_vars = (c.lhs, tuple(p.name for p in c.parts))
                break
        others = [(n, t) for n, t in binders
                  if split_vars is None or n not in split_vars[1]]
        domains = [self.domain(t) for _, t in others]
        split_options = [()]
        if split_vars is not None:
            split_options = list(_splits(self.term(split_vars[0], env), len(split_vars[1])))
        for values in itertools.product(*domains):
            base = dict(env)
            base.update(zip((n for n, _ in others), values))
            for parts in split_options:
                if split_vars is None:
                    yield base
                else:
                    yield {**base, **dict(zip(split_vars[1], parts))}

    def eval(self, f, env):
        if isinstance(f, TrueF):
            return True
        if isinstance(f, FalseF):
            return False
        if isinstance(f, And):
            return self.eval(f.left, env) and self.eval(f.right, env)
        if isinstance(f, Or):
            return self.eval(f.left, env) or self.eval(f.right, env)
        if isinstance(f, Implies):
            return (not self.eval(f.left, env)) or self.eval(f.right, env)
        if isinstance(f, Iff):
            return self.eval(f.left, env) == self.eval(f.right, env)
        if isinstance(f, Not):
            return not self.eval(f.arg, env)
        if isinstance(f, Forall):
            return all(self.eval(f.body, e) for e in self.assignments(f.binders, f.body, env))
        if isinstance(f, Exists):
            return any(self.eval(f.body, e) for e in self.assignments(f.binders, f.body, env))
        if isinstance(f, MemAtom):
            if isinstance(f.target, FamilyRef):
                value = self.model.family(f.target.name)[self.term(f.target.index, env)]
            else:
                value = self.model.lookup(f.target)
            return tuple(self.term(t, env) for t in f.terms) in value.elems
        if isinstance(f, EqAtom):
            return self.term(f.left, env) == self.term(f.right, env)
        if isinstance(f, TraceEqAtom):
            joined = ()
            for p in f.parts:
                joined += tuple(self.term(p, env))
            return tuple(self.term(f.lhs, env)) == joined
        raise TypeError(f"not a formula: {f!r}")


def check_soundness(s, model, trace_cap=DEFAULT_TRACE_CAP):
    """(direct truth of ``s``, truth of its unfolded formula); always equal."""
    bound = E.trace_len_bound(s, model)
    return E.holds(s, model), eval_formula(unfold(s), model, trace_cap, bound)


# ---------------------------------------------------------------- rendering

_BINDER = 200
_LEVEL = {Iff: 95, Implies: 99, Or: 85, And: 80, Not: 75}
_TOKEN = {Iff: "<->", Implies: "->", Or: "\\/", And: "/\\"}
# (max level of left operand, max level of right operand)
_OPERANDS = {Iff: (94, 94), Implies: (98, 99), Or: (84, 85), And: (79, 80)}


def _level(f):
    if isinstance(f, (Forall, Exists)):
        return _BINDER
    return _LEVEL.get(type(f), 0)


def render_term(t):
    if isinstance(t, TVar):
        return t.name
    v = t.value
    if isinstance(v, tuple):
        return "nil" if not v else "[" + "; ".join(map(str, v)) + "]"
    return str(v)


def _render_terms(terms):
    if len(terms) == 1:
        return render_term(terms[0])
    return "(" + ", ".join(render_term(t) for t in terms) + ")"


def _render_binders(binders, typed):
    if not typed:
        return " ".join(n for n, _ in binders)
    groups = []
    for name, typ in binders:
        if groups and groups[-1][1] == typ:
            groups[-1][0].append(name)
        else:
            groups.append(([name], typ))
    if len(groups) == 1:
        names, typ = groups[0]
        return f"{' '.join(names)} : {typ}"
    return " ".join(f"({' '.join(names)} : {typ})" for names, typ in groups)


def render(f, typed_forall=False):
    """Coq-style text of ``f``: ``forall``, ``exists``, ``/\\``, ``\\/``, ``->``, ``<->``."""
    return _render(f, 1000, typed_forall)


def _render(f, limit, typed_forall):
    text = _render_bare(f, typed_forall)
    return f"({text})" if _level(f) > limit else text


def _render_bare(f, typed_forall):
    if isinstance(f, Forall):
        return (f"forall {_render_binders(f.binders, typed_forall)}, "
                f"{_render(f.body, 1000, typed_forall)}")
    if isinstance(f, Exists):
        return f"exists {_render_binders(f.binders, True)}, {_render(f.body, 1000, typed_forall)}"
    if type(f) in _TOKEN:
        lmax, rmax = _OPERANDS[type(f)]
        return (f"{_render(f.left, lmax, typed_forall)} {_TOKEN[type(f)]} "
                f"{_render(f.right, rmax, typed_forall)}")
    if isinstance(f, Not):
        return f"~ {_render(f.arg, 75, typed_forall)}"
    if isinstance(f, TrueF):
        return "True"
    if isinstance(f, FalseF):
        return "False"
    if isinstance(f, MemAtom):
        if isinstance(f.target, FamilyRef):
            target = f"{f.target.name} {render_term(f.target.index)}"
        else:
            target = f.target
        if not f.terms:
            return target
        return f"{_render_terms(f.terms)} ∈ {target}"
    if isinstance(f, EqAtom):
        return f"{render_term(f.left)} = {render_term(f.right)}"
    if isinstance(f, TraceEqAtom):
        rhs = " ++ ".join(render_term(p) for p in f.parts) if f.parts else "nil"
        return f"{render_term(f.lhs)} = {rhs}"
    raise TypeError(f"not a formula: {f!r}")


# Expression rendering: ∘ binds tighter than ∩, which binds tighter than ∪;
# ⋃/⋂ applied to a family name bind tightest.
_EXPR_LEVEL = {E.Union: 50, E.Intersect: 40, E.ConcatRR: 30, E.ConcatRS: 30,
               E.ConcatTT: 30, E.ConcatTS: 30}
_EXPR_TOKEN = {E.Union: "∪", E.Intersect: "∩", E.ConcatRR: "∘", E.ConcatRS: "∘",
               E.ConcatTT: "∘", E.ConcatTS: "∘"}


def render_expr(e):
    return _render_expr(e, 100)


def _render_expr(e, limit):
    level = _EXPR_LEVEL.get(type(e), 0)
    if type(e) in _EXPR_TOKEN:
        text = (f"{_render_expr(e.left, level)} {_EXPR_TOKEN[type(e)]} "
                f"{_render_expr(e.right, level - 1)}")
        return f"({text})" if level > limit else text
    if isinstance(e, E.SVar):
        return e.name
    if isinstance(e, E.FamilyApp):
        return f"{e.name} {e.index_var}"
    if isinstance(e, E.Empty):
        return "∅"
    if isinstance(e, E.Full):
        return "full"
    if isinstance(e, (E.IdR, E.IdT)):
        return "id"
    if isinstance(e, (E.IndexedUnion, E.IndexedIntersect)):
        op = "⋃" if isinstance(e, E.IndexedUnion) else "⋂"
        body = e.body
        if isinstance(body, E.FamilyApp) and body.index_var == e.var:
            return f"{op} {body.name}"
        return f"{op} (fun {e.var} => {_render_expr(body, 100)})"
    raise TypeError(f"not a set expression: {e!r}")


def render_statement(s):
    if isinstance(s, E.Equiv):
        return f"{render_expr(s.left)} == {render_expr(s.right)}"
    if isinstance(s, E.Included):
        return f"{render_expr(s.left)} ⊆ {render_expr(s.right)}"
    terms = tuple(TConst(v) for v in s.elem)
    return f"{_render_terms(terms)} ∈ {render_expr(s.expr)}"
