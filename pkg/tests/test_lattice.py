import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from relsem.finrel import FinRel, empty, full, intersect, rel, union
from relsem.lattice import (
    MonotoneMap,
    NonMonotoneError,
    check_least,
    check_lub,
    check_monotone,
    check_partial_order,
    gfp,
    gfp_with_count,
    lfp,
    lfp_with_count,
)
from relsem.rels import compose_rr, compose_rs, id_r
from relsem.universe import Sort, tuple_space_size
from strategies import rels_over

N = Sort("N", (0, 1, 2, 3))
SIG2 = (N, N)
SIG1 = (N,)


def test_constant_map():
    c = rel(SIG1, [1, 3])
    f = MonotoneMap(SIG1, lambda x: c)
    assert lfp(f) == c == gfp(f)


def test_add_one_tuple():
    f = MonotoneMap(SIG1, lambda x: union(x, rel(SIG1, [2])))
    x, n = lfp_with_count(f)
    assert x == rel(SIG1, [2])
    assert n == 2


def test_gfp_of_meet():
    d = rel(SIG1, [0, 1])
    assert gfp(MonotoneMap(SIG1, lambda x: intersect(x, d))) == d


def test_gfp_acyclic_preimage_is_empty():
    step = rel(SIG2, [(0, 1), (1, 2), (2, 3)])
    assert gfp(MonotoneMap(SIG1, lambda x: compose_rs(step, x))) == empty(SIG1)


def test_gfp_finds_cycles():
    step = rel(SIG2, [(0, 1), (1, 0), (2, 3)])
    assert gfp(MonotoneMap(SIG1, lambda x: compose_rs(step, x))) == rel(SIG1, [0, 1])


def test_non_monotone_is_detected():
    f = MonotoneMap(SIG1, lambda x: FinRel(SIG1, full(SIG1).elems - x.elems))
    with pytest.raises(NonMonotoneError):
        lfp(f)
    report = check_monotone(f, [empty(SIG1), full(SIG1)])
    assert not report.ok
    assert str(report).startswith("FAIL monotone")


def test_check_monotone_identity_and_composition():
    samples = [empty(SIG2), rel(SIG2, [(0, 1)]), rel(SIG2, [(0, 1), (1, 2)]), full(SIG2)]
    assert check_monotone(MonotoneMap(SIG2, lambda x: x), samples).ok
    r = rel(SIG2, [(1, 0), (2, 2)])
    assert check_monotone(MonotoneMap(SIG2, lambda x: compose_rr(r, x)), samples).ok


def test_partial_order_examples():
    x = rel(SIG1, [0])
    assert check_partial_order(SIG1, [x, rel(SIG1, [0]), full(SIG1)]).ok


def test_lub_example():
    fam = [rel(SIG1, [1]), rel(SIG1, [2])]
    report = check_lub(SIG1, fam, [rel(SIG1, [1, 2, 3])])
    assert report.ok and report.checked == 3


@given(rels_over(N, N), rels_over(N, N))
def test_lfp_is_reachability(step, base):
    f = MonotoneMap(SIG2, lambda x: union(compose_rr(step, x), base))
    closure = oracles.reachable_pairs(step.elems, N.carrier)
    expected = {(a, c) for a, b in closure for b2, c in base.elems if b == b2}
    x, n = lfp_with_count(f)
    assert x.elems == expected
    assert n <= tuple_space_size(SIG2) + 1


@given(rels_over(N, N), rels_over(N, N), st.lists(rels_over(N, N), max_size=6))
def test_lfp_below_prefixed_points(step, base, samples):
    f = MonotoneMap(SIG2, lambda x: union(compose_rr(step, x), base))
    fixed = lfp(f)
    # closing a sample under f gives a pre-fixed point above it
    closed = [gfp_with_count(f)[0]] + [lfp(MonotoneMap(SIG2, lambda x, s=s: union(f(x), s)))
                                        for s in samples]
    assert check_least(f, fixed, closed + samples).ok
    assert gfp(f) == f(gfp(f))


@given(st.lists(rels_over(N, N), min_size=1, max_size=4))
def test_union_is_lub(family):
    assert check_lub(SIG2, family).ok


@given(st.lists(rels_over(N, N), max_size=5))
def test_inclusion_is_partial_order(samples):
    assert check_partial_order(SIG2, samples + [id_r(N)]).ok
