import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from relsem.finrel import (
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
from relsem.universe import SizeLimitError, Sort, SortMismatch, enumerate_tuples
from strategies import A, B, rels_over

S012 = Sort("S", (0, 1, 2, 3))
BIT = Sort("Bit", (0, 1))
I = Sort("I", ("i0", "i1"))


def test_member_examples():
    assert member((0, 1), rel([BIT, BIT], [(0, 1)]))
    assert not member((1, 1), empty([BIT, BIT]))
    assert member((), full([]))


def test_member_checks_sorts():
    with pytest.raises(SortMismatch):
        member((0, 7), rel([BIT, BIT]))


def test_union_example():
    assert union(rel([S012], [1, 2]), rel([S012], [2, 3])) == rel([S012], [1, 2, 3])


def test_units():
    x = rel([BIT, BIT], [(0, 1), (1, 1)])
    assert union(x, empty(x.sig)) == x
    assert intersect(x, full(x.sig)) == x


def test_sig_mismatch():
    with pytest.raises(SortMismatch):
        union(rel([BIT]), rel([S012]))


def test_empty_full():
    assert empty([BIT]).elems == frozenset()
    assert full([BIT]).elems == {(0,), (1,)}
    assert full([]).elems == {()}


def test_arity_zero_dump():
    assert full([]).dump() == "true"
    assert empty([]).dump() == "false"


def test_dump_is_sorted():
    x = rel([BIT, Sort("L", ("a", "b"))], [(1, "a"), (0, "b"), (0, "a")])
    assert x.dump() == "(0,a)\n(0,b)\n(1,a)"


def test_inclusion_examples():
    assert included(rel([S012], [1]), rel([S012], [1, 2]))
    x = rel([S012], [0, 3])
    assert included(x, x)


def test_indexed_union_fold():
    fam = IndexedFamily(I, {"i0": rel([S012], [1]), "i1": rel([S012], [2])})
    assert indexed_union(fam) == rel([S012], [1, 2])
    assert indexed_intersect(fam) == empty([S012])


def test_constant_family():
    x = rel([S012], [0, 2])
    fam = IndexedFamily(I, {"i0": x, "i1": x})
    assert indexed_union(fam) == indexed_intersect(fam) == x


def test_family_must_be_total():
    with pytest.raises(Exception):
        IndexedFamily(I, {"i0": rel([S012])})


def test_general_union_contains_zero():
    got = general_union(lambda s: (0,) in s.elems, [BIT])
    assert got == full([BIT])


def test_general_false_predicate():
    assert general_union(lambda s: False, [BIT]) == empty([BIT])
    assert general_intersect(lambda s: False, [BIT]) == full([BIT])


def test_general_size_limit():
    with pytest.raises(SizeLimitError):
        general_union(lambda s: True, [S012, S012, S012])


@given(rels_over(A, B), rels_over(A, B), rels_over(A, B))
def test_lattice_laws(x, y, z):
    assert union(x, y) == union(y, x)
    assert intersect(x, y) == intersect(y, x)
    assert union(union(x, y), z) == union(x, union(y, z))
    assert intersect(intersect(x, y), z) == intersect(x, intersect(y, z))


@given(rels_over(A, B), rels_over(A, B), rels_over(A, B))
def test_inclusion_partial_order(x, y, z):
    assert included(x, x)
    if included(x, y) and included(y, z):
        assert included(x, z)
    if included(x, y) and included(y, x):
        assert equiv(x, y)


@given(rels_over(A, B), rels_over(A, B))
def test_equiv_is_pointwise(x, y):
    space = enumerate_tuples([A, B])
    pointwise = all(member(t, x) == member(t, y) for t in space)
    assert equiv(x, y) == pointwise


masks = st.integers(0, 15)


@given(masks)
def test_general_union_matches_powerset_oracle(mask):
    space = enumerate_tuples([BIT, BIT])
    target = {t for k, t in enumerate(space) if mask >> k & 1}

    def pred(s):
        return len(set(s.elems) & target) == 1

    expected = oracles.general_union(lambda s: len(s & target) == 1, space)
    assert general_union(pred, [BIT, BIT]).elems == expected


@given(st.lists(rels_over(BIT, BIT), min_size=2, max_size=2, unique=True))
def test_indexed_union_is_general_union_over_members(members):
    fam = IndexedFamily(I, dict(zip(I.carrier, members)))
    chosen = set(members)
    assert indexed_union(fam) == general_union(lambda s: s in chosen, [BIT, BIT])


@given(rels_over(A, B), st.lists(rels_over(A, B), min_size=2, max_size=2))
def test_intersect_distributes_over_indexed_union(x, members):
    fam = IndexedFamily(I, dict(zip(I.carrier, members)))
    assert intersect(x, indexed_union(fam)) == indexed_union(fam.map(lambda y: intersect(x, y)))


def test_finrel_rejects_ill_sorted():
    with pytest.raises(SortMismatch):
        FinRel((BIT,), {(5,)})
