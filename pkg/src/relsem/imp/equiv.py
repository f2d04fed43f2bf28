"""Program equivalence by comparing denotations, plus denotation dumps."""

from __future__ import annotations

from dataclasses import dataclass

from ..finrel import distinguishing_elem, equiv
from ..rels import render_trace
from .semantics import (
    DEFAULT_MAX_ITER,
    FlavorError,
    NrmInf,
    Traced,
    denote_nrm_inf,
    denote_plain,
    denote_traced,
)

FLAVORS = ("plain", "nrminf", "traced")


@dataclass(frozen=True)
class Verdict:
    equivalent: bool
    counterexample: str | None = None
    # False when a traced loop hit the iteration cap on either side
    conclusive: bool = True

    def __bool__(self):
        return self.equivalent


def render_transition(elem):
    if len(elem) == 3:
        s, trace, t = elem
        return f"{s} -{render_trace(trace)}-> {t}"
    s, t = elem
    return f"{s} -> {t}"


def dump(value):
    """Canonical one-transition-per-line text of a denotation."""
    if isinstance(value, NrmInf):
        lines = ["nrm:"] + ["  " + render_transition(e) for e in value.nrm]
        lines += ["inf:"] + [f"  {s}" for (s,) in value.inf]
        return "\n".join(lines)
    if isinstance(value, Traced):
        value = value.rel
    return "\n".join(render_transition(e) for e in value)


def denote(c, universe, flavor, max_iter=DEFAULT_MAX_ITER, stats=None):
    if flavor == "plain":
        return denote_plain(c, universe, stats)
    if flavor == "nrminf":
        return denote_nrm_inf(c, universe, stats)
    if flavor == "traced":
        return denote_traced(c, universe, max_iter, stats)
    raise FlavorError(f"unknown flavor {flavor!r}; expected one of {FLAVORS}")


def _compare(x, y, label=""):
    if equiv(x, y):
        return None
    elem = distinguishing_elem(x, y)
    side = "first" if elem in x.elems else "second"
    if x.shape[0] == "rel" and len(x.sig) == 1:
        text = f"{elem[0]}"
    else:
        text = render_transition(elem)
    return f"{label}{text} only in {side} program"


def check_equiv(c1, c2, universe, flavor="plain", max_iter=DEFAULT_MAX_ITER) -> Verdict:
    d1 = denote(c1, universe, flavor, max_iter)
    d2 = denote(c2, universe, flavor, max_iter)
    if flavor == "nrminf":
        cex = _compare(d1.nrm, d2.nrm, "nrm: ") or _compare(d1.inf, d2.inf, "inf: ")
        return Verdict(cex is None, cex)
    if flavor == "traced":
        cex = _compare(d1.rel, d2.rel)
        return Verdict(cex is None, cex, d1.fixpoint_reached and d2.fixpoint_reached)
    cex = _compare(d1, d2)
    return Verdict(cex is None, cex)
