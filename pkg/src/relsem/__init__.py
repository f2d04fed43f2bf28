"""A finite-model workbench for a unified algebra of sets and relations."""

from .finrel import (
    FinRel,
    IndexedFamily,
    empty,
    equiv,
    full,
    general_intersect,
    general_union,
    included,
    indexed_intersect,
    indexed_union,
    intersect,
    member,
    rel,
    union,
)
from .rels import (
    Lasso,
    OmegaSet,
    TraceRel,
    TraceSet,
    canonicalize,
    compose_rr,
    compose_rs,
    compose_ts,
    compose_tt,
    compose_tw,
    id_r,
    id_t,
)
from .universe import RelsemError, Sort, State, Universe, enumerate_tuples, parse_universe

__version__ = "0.1.0"
