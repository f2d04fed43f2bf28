"""Denotational semantics of the toy language in three flavours.

* plain:  ``⟦c⟧ ⊆ state × state``
* nrm/inf: a terminating relation plus the set of states that may diverge
* traced: ``⟦c⟧ ⊆ state × E* × state``

Every clause is written with the operators of :mod:`relsem.rels`, so
sequencing is always composition and branching is always
``test_true ∘ ⟦c1⟧ ∪ test_false ∘ ⟦c2⟧``.

Assignments whose value falls outside the variable's declared range have no
successor: the transition is dropped and counted in :class:`Stats`.
"""

from __future__ import annotations

from dataclasses import dataclass

from .. import finrel
from ..finrel import FinRel, union
from ..lattice import MonotoneMap, gfp, lfp_with_count
from ..rels import TraceRel, compose_rr, compose_rs, compose_tt, id_r, id_t
from ..universe import RelsemError
from . import syntax as ast

DEFAULT_MAX_ITER = 64


class FlavorError(RelsemError):
    pass


class EvalError(RelsemError):
    pass


@dataclass
class Stats:
    pruned: int = 0
    iterations: int = 0
    fixpoint_reached: bool = True
    states: int = 0

    def lines(self):
        return [f"states: {self.states}",
                f"iterations: {self.iterations}",
                f"pruned transitions: {self.pruned}",
                f"fixpoint reached: {str(self.fixpoint_reached).lower()}"]


@dataclass(frozen=True)
class NrmInf:
    nrm: FinRel
    inf: FinRel


@dataclass(frozen=True)
class Traced:
    rel: TraceRel
    fixpoint_reached: bool


_ARITH = {"+": lambda a, b: a + b, "-": lambda a, b: a - b, "*": lambda a, b: a * b}
_CMP = {"==": int.__eq__, "!=": int.__ne__, "<=": int.__le__, "<": int.__lt__,
        ">=": int.__ge__, ">": int.__gt__}


def eval_aexp(e, s):
    if isinstance(e, ast.Num):
        return e.value
    if isinstance(e, ast.Var):
        return s[e.name]
    if isinstance(e, ast.BinOp):
        return _ARITH[e.op](eval_aexp(e.left, s), eval_aexp(e.right, s))
    raise TypeError(f"not an integer expression: {e!r}")


def eval_bexp(e, s):
    if isinstance(e, ast.BConst):
        return e.value
    if isinstance(e, ast.Cmp):
        return _CMP[e.op](eval_aexp(e.left, s), eval_aexp(e.right, s))
    if isinstance(e, ast.Not):
        return not eval_bexp(e.arg, s)
    if isinstance(e, ast.And):
        return eval_bexp(e.left, s) and eval_bexp(e.right, s)
    if isinstance(e, ast.Or):
        return eval_bexp(e.left, s) or eval_bexp(e.right, s)
    raise TypeError(f"not a boolean expression: {e!r}")


def test_true(e, universe) -> FinRel:
    st = universe.state
    return FinRel((st, st), frozenset((s, s) for s in st.carrier if eval_bexp(e, s)))


def test_false(e, universe) -> FinRel:
    st = universe.state
    return FinRel((st, st), frozenset((s, s) for s in st.carrier if not eval_bexp(e, s)))


def _traced_test(e, universe, expected):
    st = universe.state
    return TraceRel(st, _events(universe), st, frozenset(
        (s, (), s) for s in st.carrier if eval_bexp(e, s) == expected))


def _events(universe):
    if universe.events is None:
        raise FlavorError("traced semantics needs an event alphabet in the universe")
    return universe.events


def _assign_pairs(c, universe, stats):
    for s in universe.state.carrier:
        v = eval_aexp(c.expr, s)
        if universe.in_range(c.var, v):
            yield s, s.update(c.var, v)
        elif stats is not None:
            stats.pruned += 1


def _new_stats(universe, stats):
    if stats is None:
        stats = Stats()
    stats.states = len(universe.state)
    return stats


def denote_plain(c, universe, stats=None) -> FinRel:
    stats = _new_stats(universe, stats)
    return _plain(c, universe, stats)


def _plain(c, u, stats):
    st = u.state
    if isinstance(c, ast.Skip):
        return id_r(st)
    if isinstance(c, ast.Assign):
        return FinRel((st, st), frozenset(_assign_pairs(c, u, stats)))
    if isinstance(c, ast.Seq):
        return compose_rr(_plain(c.first, u, stats), _plain(c.second, u, stats))
    if isinstance(c, ast.If):
        return union(compose_rr(test_true(c.cond, u), _plain(c.then, u, stats)),
                     compose_rr(test_false(c.cond, u), _plain(c.orelse, u, stats)))
    if isinstance(c, ast.While):
        return _while_plain(c, u, stats)
    if isinstance(c, ast.Choice):
        return union(_plain(c.left, u, stats), _plain(c.right, u, stats))
    if isinstance(c, ast.Write):
        raise FlavorError("write is only meaningful under the traced semantics")
    raise TypeError(f"not a command: {c!r}")


def while_functional(cond, body_rel, universe) -> MonotoneMap:
    """``X ↦ test_true ∘ body ∘ X ∪ test_false``."""
    st = universe.state
    step = compose_rr(test_true(cond, universe), body_rel)
    exit_ = test_false(cond, universe)
    return MonotoneMap((st, st), lambda x: union(compose_rr(step, x), exit_))


def _while_plain(c, u, stats):
    f = while_functional(c.cond, _plain(c.body, u, stats), u)
    result, n = lfp_with_count(f)
    stats.iterations += n
    return result


def denote_nrm_inf(c, universe, stats=None) -> NrmInf:
    stats = _new_stats(universe, stats)
    return _nrm_inf(c, universe, stats)


def _no_divergence(u):
    return finrel.empty((u.state,))


def _nrm_inf(c, u, stats):
    if isinstance(c, (ast.Skip, ast.Assign)):
        return NrmInf(_plain(c, u, stats), _no_divergence(u))
    if isinstance(c, ast.Seq):
        d1 = _nrm_inf(c.first, u, stats)
        d2 = _nrm_inf(c.second, u, stats)
        return NrmInf(compose_rr(d1.nrm, d2.nrm),
                      union(d1.inf, compose_rs(d1.nrm, d2.inf)))
    if isinstance(c, ast.If):
        d1 = _nrm_inf(c.then, u, stats)
        d2 = _nrm_inf(c.orelse, u, stats)
        tt, tf = test_true(c.cond, u), test_false(c.cond, u)
        return NrmInf(union(compose_rr(tt, d1.nrm), compose_rr(tf, d2.nrm)),
                      union(compose_rs(tt, d1.inf), compose_rs(tf, d2.inf)))
    if isinstance(c, ast.Choice):
        d1 = _nrm_inf(c.left, u, stats)
        d2 = _nrm_inf(c.right, u, stats)
        return NrmInf(union(d1.nrm, d2.nrm), union(d1.inf, d2.inf))
    if isinstance(c, ast.While):
        return _while_nrm_inf(c, u, stats)
    if isinstance(c, ast.Write):
        raise FlavorError("write is only meaningful under the traced semantics")
    raise TypeError(f"not a command: {c!r}")


def _while_nrm_inf(c, u, stats):
    body = _nrm_inf(c.body, u, stats)
    f = while_functional(c.cond, body.nrm, u)
    nrm, n = lfp_with_count(f)
    stats.iterations += n
    step = compose_rr(test_true(c.cond, u), body.nrm)
    # loops forever by iterating the body without end
    spin = gfp(MonotoneMap((u.state,), lambda x: compose_rs(step, x)))
    # reaches, after finitely many iterations, a state where the body diverges
    body_div = compose_rs(test_true(c.cond, u), body.inf)
    reach, m = lfp_with_count(
        MonotoneMap((u.state,), lambda x: union(body_div, compose_rs(step, x))))
    stats.iterations += m
    return NrmInf(nrm, union(spin, reach))


def denote_traced(c, universe, max_iter=DEFAULT_MAX_ITER, stats=None) -> Traced:
    stats = _new_stats(universe, stats)
    _events(universe)
    rel, reached = _traced(c, universe, max_iter, stats)
    stats.fixpoint_reached = stats.fixpoint_reached and reached
    return Traced(rel, reached)


def _traced(c, u, max_iter, stats):
    st, ev = u.state, u.events
    if isinstance(c, ast.Skip):
        return id_t(st, ev), True
    if isinstance(c, ast.Assign):
        return TraceRel(st, ev, st, frozenset(
            (s, (), t) for s, t in _assign_pairs(c, u, stats))), True
    if isinstance(c, ast.Write):
        triples = set()
        for s in st.carrier:
            v = eval_aexp(c.expr, s)
            label = u.event_for(v)
            if label is None:
                raise EvalError(f"write({c.expr}) at state {s} yields {v}, "
                                f"which is mapped to no event")
            triples.add((s, (label,), s))
        return TraceRel(st, ev, st, frozenset(triples)), True
    if isinstance(c, ast.Seq):
        r1, ok1 = _traced(c.first, u, max_iter, stats)
        r2, ok2 = _traced(c.second, u, max_iter, stats)
        return compose_tt(r1, r2), ok1 and ok2
    if isinstance(c, ast.If):
        r1, ok1 = _traced(c.then, u, max_iter, stats)
        r2, ok2 = _traced(c.orelse, u, max_iter, stats)
        return union(compose_tt(_traced_test(c.cond, u, True), r1),
                     compose_tt(_traced_test(c.cond, u, False), r2)), ok1 and ok2
    if isinstance(c, ast.Choice):
        r1, ok1 = _traced(c.left, u, max_iter, stats)
        r2, ok2 = _traced(c.right, u, max_iter, stats)
        return union(r1, r2), ok1 and ok2
    if isinstance(c, ast.While):
        body, ok = _traced(c.body, u, max_iter, stats)
        step = compose_tt(_traced_test(c.cond, u, True), body)
        exit_ = _traced_test(c.cond, u, False)
        x = TraceRel(st, ev, st, frozenset())
        for n in range(1, max_iter + 1):
            nxt = union(compose_tt(step, x), exit_)
            if nxt == x:
                stats.iterations += n
                return x, ok
            x = nxt
        stats.iterations += max_iter
        return x, False
    raise TypeError(f"not a command: {c!r}")
