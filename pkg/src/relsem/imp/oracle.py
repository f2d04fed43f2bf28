"""Small-step reference interpreter used to cross-check the denotations.

A configuration is ``(continuation, state)`` where the continuation is the
stack of commands still to run.  ``step`` yields every successor together
with the event it emits, if any.  The configuration graph of a program over
a finite state space is finite, so the oracles below explore it exhaustively
and never use the fixed-point machinery they are meant to check.
"""

from __future__ import annotations

from collections import deque

import networkx as nx

from ..finrel import FinRel
from ..rels import TraceRel
from ..universe import RelsemError
from . import syntax as ast
from .semantics import EvalError, eval_aexp, eval_bexp

DEFAULT_CONFIG_CAP = 200_000


class ConfigurationCapError(RelsemError):
    pass


def step(config, universe):
    """Successors of ``config`` as ``(config, event-or-None)`` pairs."""
    kont, s = config
    c, rest = kont[0], kont[1:]
    if isinstance(c, ast.Skip):
        return [((rest, s), None)]
    if isinstance(c, ast.Assign):
        v = eval_aexp(c.expr, s)
        if not universe.in_range(c.var, v):
            return []
        return [((rest, s.update(c.var, v)), None)]
    if isinstance(c, ast.Write):
        v = eval_aexp(c.expr, s)
        label = universe.event_for(v)
        if label is None:
            raise EvalError(f"write({c.expr}) at state {s} yields {v}, which is mapped to no event")
        return [((rest, s), label)]
    if isinstance(c, ast.Seq):
        return [(((c.first, c.second) + rest, s), None)]
    if isinstance(c, ast.If):
        branch = c.then if eval_bexp(c.cond, s) else c.orelse
        return [(((branch,) + rest, s), None)]
    if isinstance(c, ast.While):
        if eval_bexp(c.cond, s):
            return [(((c.body, c) + rest, s), None)]
        return [((rest, s), None)]
    if isinstance(c, ast.Choice):
        return [(((c.left,) + rest, s), None), (((c.right,) + rest, s), None)]
    raise TypeError(f"not a command: {c!r}")


def _explore(c, universe, cap):
    """The configuration graph reachable from every initial state."""
    graph = nx.DiGraph()
    todo = deque(((c,), s) for s in universe.state.carrier)
    graph.add_nodes_from(todo)
    while todo:
        config = todo.popleft()
        if not config[0]:
            continue
        for nxt, _ in step(config, universe):
            if nxt not in graph:
                if graph.number_of_nodes() >= cap:
                    raise ConfigurationCapError(f"more than {cap} configurations")
                todo.append(nxt)
            graph.add_edge(config, nxt)
    return graph


def oracle_plain(c, universe, cap=DEFAULT_CONFIG_CAP) -> FinRel:
    st = universe.state
    graph = _explore(c, universe, cap)
    pairs = set()
    for s in st.carrier:
        start = ((c,), s)
        for config in nx.descendants(graph, start) | {start}:
            if not config[0]:
                pairs.add((s, config[1]))
    return FinRel((st, st), frozenset(pairs))


def oracle_inf(c, universe, cap=DEFAULT_CONFIG_CAP) -> FinRel:
    """States from which some execution runs forever (reaches a cycle)."""
    st = universe.state
    graph = _explore(c, universe, cap)
    on_cycle = set()
    for scc in nx.strongly_connected_components(graph):
        node = next(iter(scc))
        if len(scc) > 1 or graph.has_edge(node, node):
            on_cycle |= scc
    diverging = set()
    for s in st.carrier:
        start = ((c,), s)
        reach = nx.descendants(graph, start) | {start}
        if reach & on_cycle:
            diverging.add((s,))
    return FinRel((st,), frozenset(diverging))


def oracle_traced(c, universe, len_bound, cap=DEFAULT_CONFIG_CAP) -> TraceRel:
    """All terminating runs whose trace has at most ``len_bound`` events."""
    st = universe.state
    triples = set()
    for s in st.carrier:
        start = ((c,), s, ())
        seen = {start}
        todo = deque([start])
        while todo:
            kont, cur, trace = todo.popleft()
            if not kont:
                triples.add((s, trace, cur))
                continue
            for (nkont, nstate), event in step((kont, cur), universe):
                ntrace = trace if event is None else trace + (event,)
                if len(ntrace) > len_bound:
                    continue
                node = (nkont, nstate, ntrace)
                if node not in seen:
                    if len(seen) >= cap:
                        raise ConfigurationCapError(f"more than {cap} configurations")
                    seen.add(node)
                    todo.append(node)
    return TraceRel(st, universe.events, st, frozenset(triples))
