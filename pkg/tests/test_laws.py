import random

import pytest

from relsem import laws as L
from relsem.finrel import intersect, union


def broken_union_comm(rng):
    """Union commutativity with one side swapped for an intersection."""
    s = L.Sorts.draw(rng)
    make = L.random_set_value(rng, s)
    x, y = make(), make()
    return L.differ(union(x, y), intersect(y, x), x=x, y=y)


BROKEN = L.Law("Sets_union_comm_mutant", broken_union_comm)


def test_catalog_covers_the_printed_laws():
    names = {law.name for law in L.catalog()}
    for name in ("Sets_union_comm", "Sets_union_assoc", "Sets_intersect_comm",
                 "Sets_intersect_assoc", "Sets_intersect_indexed_union_distr",
                 "relation_inclusion_antisymm", "Sets_unfold_sound"):
        assert name in names
    for k in range(1, 6):
        assert f"Rels_concat_assoc[case{k}]" in names
    for v in ("rr", "rs", "tt", "ts", "tw"):
        for side in "rl":
            assert f"Rels_concat_union_distr_{side}[{v}]" in names
            assert f"Rels_concat_indexed_union_distr_{side}[{v}]" in names


@pytest.mark.parametrize("law", L.catalog(), ids=lambda law: law.name)
def test_law_holds(law):
    result = L.run_law(law, seed=1, cases=40)
    assert result.ok, result.line()


def test_mutant_is_caught():
    result = L.run_law(BROKEN, seed=0, cases=50)
    assert not result.ok
    line = result.line()
    assert line.startswith("FAIL Sets_union_comm_mutant")
    assert "counterexample: case " in line and "only on the left side" in line


def test_report_is_deterministic():
    laws = L.catalog()[:6] + [BROKEN]
    first = L.report(L.run_laws(7, 30, laws))
    second = L.report(L.run_laws(7, 30, laws))
    assert first == second
    assert first.splitlines()[-1] == "6/7 laws passed"


def test_cases_depend_on_seed():
    law = L.catalog()[0]
    a = [law.check(random.Random(f"0/{law.name}/{i}")) for i in range(3)]
    assert a == [None, None, None]


def test_groups_filter():
    results = L.run_laws(0, 3, groups={"lattice"})
    assert {r.name for r in results} >= {"Kleene_lfp_least", "relation_inclusion_antisymm"}
    assert all(r.ok for r in results)


def test_random_traces_respect_cap():
    rng = random.Random(3)
    lengths = [len(L.random_trace(rng)) for _ in range(2000)]
    assert max(lengths) <= 4
    # geometric with continuation 2/3 has mean 2 before the cap
    assert 1.2 < sum(lengths) / len(lengths) < 2.0
