"""Reference implementations the tests compare the library against.

Each one follows the textbook definition as literally as possible and
shares no code with the package beyond the value constructors.
"""

from __future__ import annotations

import itertools
import math
from collections import deque


def compose_rr(r_pairs, s_pairs, middle):
    """{(a, c) | exists b in middle, (a, b) in R and (b, c) in S}."""
    out = set()
    for b in middle:
        for a, b1 in r_pairs:
            if b1 != b:
                continue
            for b2, c in s_pairs:
                if b2 == b:
                    out.add((a, c))
    return out


def compose_tt(r_triples, s_triples):
    out = set()
    for a, l1, b in r_triples:
        for b2, l2, c in s_triples:
            if b == b2:
                out.add((a, tuple(l1) + tuple(l2), c))
    return out


def powerset(elems):
    elems = list(elems)
    for k in range(len(elems) + 1):
        yield from (frozenset(c) for c in itertools.combinations(elems, k))


def general_union(pred, space):
    out = set()
    for subset in powerset(space):
        if pred(subset):
            out |= subset
    return out


def reachable_pairs(edges, nodes):
    """Reflexive-transitive closure by breadth-first search from each node."""
    succ = {n: [b for a, b in edges if a == n] for n in nodes}
    out = set()
    for start in nodes:
        seen, todo = {start}, deque([start])
        while todo:
            n = todo.popleft()
            for m in succ[n]:
                if m not in seen:
                    seen.add(m)
                    todo.append(m)
        out |= {(start, n) for n in seen}
    return out


def lasso_letters(prefix, cycle, n):
    word = list(prefix)
    while len(word) < n:
        word.extend(cycle)
    return tuple(word[:n])


def same_omega_word(u, v):
    """Equality of prefix.cycle^w words by comparing a long enough unfolding."""
    (pu, cu), (pv, cv) = u, v
    n = max(len(pu), len(pv)) + math.lcm(len(cu), len(cv))
    return lasso_letters(pu, cu, n) == lasso_letters(pv, cv, n)
