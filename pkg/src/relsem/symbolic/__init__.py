from .expr import (
    ConcatRR,
    ConcatRS,
    ConcatTS,
    ConcatTT,
    Empty,
    Equiv,
    FamilyApp,
    Full,
    IdR,
    IdT,
    Included,
    IndexedIntersect,
    IndexedUnion,
    Intersect,
    ListOf,
    Member,
    Model,
    SVar,
    Union,
    evaluate,
    holds,
    indexed_intersect,
    indexed_union,
    shape_of,
)
from .formula import (
    check_soundness,
    eval_formula,
    render,
    render_expr,
    render_statement,
    unfold,
)
from .surface import StatementSyntaxError, parse_statement
