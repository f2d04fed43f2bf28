from .equiv import FLAVORS, Verdict, check_equiv, denote, dump
from .oracle import oracle_inf, oracle_plain, oracle_traced
from .parser import ParseError, parse_bexp, parse_program
from .semantics import (
    EvalError,
    FlavorError,
    NrmInf,
    Stats,
    Traced,
    denote_nrm_inf,
    denote_plain,
    denote_traced,
    eval_aexp,
    eval_bexp,
    test_false,
    test_true,
)
