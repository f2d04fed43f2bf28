import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from relsem.finrel import IndexedFamily, rel
from relsem.laws import StatementGen
from relsem.rels import TraceRel
from relsem.symbolic import (
    ConcatRR,
    ConcatTT,
    Empty,
    Equiv,
    FamilyApp,
    Full,
    IdR,
    IdT,
    Included,
    IndexedUnion,
    Intersect,
    ListOf,
    Member,
    Model,
    StatementSyntaxError,
    SVar,
    Union,
    check_soundness,
    eval_formula,
    indexed_union,
    parse_statement,
    render,
    render_expr,
    render_statement,
    unfold,
)
from relsem.symbolic.formula import Forall, Implies, MemAtom, TVar, fresh
from relsem.universe import Sort, Universe

AB = ("A", "B")
SORTS = {"A": Sort("A", (0, 1, 2)), "B": Sort("B", (0, 1)), "C": Sort("C", (0, 1)),
         "D": Sort("D", (0,)), "N": Sort("N", ("n0", "n1"))}
EV = Sort("E", ("a", "b"))
U = Universe(SORTS, (), EV)
L = ListOf("E")


def X(name, shape=AB):
    return SVar(name, shape)


def norm(text):
    return " ".join(text.split())


def model(**sets):
    return Model(U, dict(sets))


def test_inclusion_goal_display():
    goal = render(unfold(Included(X("X"), Union(X("Y"), X("Z")))))
    assert goal == r"forall a b, (a, b) ∈ X -> (a, b) ∈ Y \/ (a, b) ∈ Z"


def test_concat_assoc_goal_display():
    r1, r2, r3 = X("R1", ("A", "B")), X("R2", ("B", "C")), X("R3", ("C", "D"))
    s = Equiv(ConcatRR(ConcatRR(r1, r2), r3), ConcatRR(r1, ConcatRR(r2, r3)))
    expected = (
        "forall a d, (exists c : C, (exists b : B, (a, b) ∈ R1 /\\ (b, c) ∈ R2) "
        "/\\ (c, d) ∈ R3) <-> (exists b : B, (a, b) ∈ R1 /\\ "
        "(exists c : C, (b, c) ∈ R2 /\\ (c, d) ∈ R3))")
    assert norm(render(unfold(s))) == norm(expected)


def test_antisymmetry_goal_shape():
    shape = ("state", "state")
    s = Included(SVar("x", shape), SVar("y", shape))
    assert render(unfold(s), typed_forall=True) == \
        "forall a a0 : state, (a, a0) ∈ x -> (a, a0) ∈ y"


def test_member_of_empty_is_false():
    assert render(unfold(Member((0,), Empty(("A",))))) == "False"


def test_indexed_union_display():
    body = Intersect(X("X"), X("Y"))
    e = IndexedUnion("n", "N", body)
    assert render_expr(e) == "⋃ (fun n => X ∩ Y)"
    lhs = Intersect(X("X"), indexed_union("Y", "N", AB))
    rhs = IndexedUnion("n", "N", Intersect(X("X"), FamilyApp("Y", "n", AB)))
    assert render_statement(Equiv(lhs, rhs)) == "X ∩ ⋃ Y == ⋃ (fun n => X ∩ Y n)"


def test_render_expr_examples():
    assert render_expr(Union(X("X"), Empty(AB))) == "X ∪ ∅"
    assert render_expr(ConcatRR(X("R"), X("S", ("B", "B")))) == "R ∘ S"
    assert render_expr(Intersect(Union(X("X"), X("Y")), X("Z"))) == "(X ∪ Y) ∩ Z"


def test_fresh_names():
    assert fresh("a", set()) == "a"
    assert fresh("a", {"a"}) == "a0"
    assert fresh("a", {"a", "a0"}) == "a1"
    assert fresh("l1", {"l1", "l2"}) == "l3"


def test_eval_formula_examples():
    f = Forall((("a", "A"),), Implies(MemAtom((TVar("a"),), "X"), MemAtom((TVar("a"),), "X")))
    assert eval_formula(f, model(X=rel([SORTS["A"]], [1])))
    sig = [SORTS["A"], SORTS["B"]]
    m = model(X=rel(sig, [(0, 0)]), Y=rel(sig), Z=rel(sig, [(0, 0)]))
    assert eval_formula(unfold(Included(X("X"), Union(X("Y"), X("Z")))), m)
    one = ("A",)
    m = model(X=rel([SORTS["A"]], [1]), Y=rel([SORTS["A"]], [2]))
    assert not eval_formula(unfold(Equiv(SVar("X", one), SVar("Y", one))), m)


def test_check_soundness_examples():
    sig = [SORTS["A"], SORTS["B"]]
    m = model(X=rel(sig, [(0, 1)]), Y=rel(sig, [(2, 0)]))
    assert check_soundness(Included(X("X"), X("X")), m) == (True, True)
    assert check_soundness(Equiv(Union(X("X"), X("Y")), Union(X("Y"), X("X"))), m) == (True, True)
    aa = [SORTS["A"], SORTS["A"]]
    m = model(R=rel(aa, [(0, 1)]), S=rel(aa, [(1, 2)]))
    s = Member((0, 2), ConcatRR(SVar("R", ("A", "A")), SVar("S", ("A", "A"))))
    assert check_soundness(s, m) == (True, True)


def test_traced_unfold_and_eval():
    shape = ("A", L, "A")
    r = TraceRel(SORTS["A"], EV, SORTS["A"], {(0, ("a",), 1)})
    s = TraceRel(SORTS["A"], EV, SORTS["A"], {(1, ("b",), 2), (1, (), 1)})
    m = model(R=r, S=s)
    comp = ConcatTT(SVar("R", shape), SVar("S", shape))
    text = render(unfold(Included(comp, comp)))
    assert text.startswith("forall a l a0, (exists (a1 : A) (l1 l2 : list E),")
    assert "l = l1 ++ l2" in text
    assert check_soundness(Member((0, ("a", "b"), 2), comp), m) == (True, True)
    assert check_soundness(Member((0, ("b",), 2), comp), m) == (False, False)
    ident = Equiv(ConcatTT(SVar("R", shape), IdT("A")), SVar("R", shape))
    assert check_soundness(ident, m) == (True, True)
    assert "l2 = nil" in render(unfold(ident))


def test_surface_syntax():
    s, decls = parse_statement("rel X : A*B\nrel Y : A*B\nrel Z : A*B\nX <= Y + Z")
    assert s == Included(X("X"), Union(X("Y"), X("Z")))
    assert decls["X"] == AB
    s, _ = parse_statement("rel R : A*B\nrel S : B*B\nR ; id == R ; S & full")
    r, sb = X("R"), X("S", ("B", "B"))
    assert s == Equiv(ConcatRR(r, IdR("B")), Intersect(ConcatRR(r, sb), Full(AB)))
    assert render_statement(s) == "R ∘ id == R ∘ S ∩ full"
    s, _ = parse_statement("rel T : A*list*A\n(0,[a,b],1) in T ; T")
    assert s == Member((0, ("a", "b"), 1), ConcatTT(SVar("T", ("A", L, "A")),
                                                    SVar("T", ("A", L, "A"))))


@pytest.mark.parametrize("text", [
    "X <= Y",                          # undeclared
    "rel X : A*B\nrel Y : B*B\nX == Y",  # signature clash
    "rel X : A*B\nX <=",               # truncated
    "rel X : A*B\nempty == full",      # nothing to infer from
])
def test_surface_errors(text):
    with pytest.raises(StatementSyntaxError):
        parse_statement(text)


@given(st.integers(0, 10**9))
def test_unfold_sound_on_random_statements(seed):
    gen = StatementGen(random.Random(seed))
    stmt = gen.statement()
    direct, unfolded = check_soundness(stmt, gen.model)
    assert direct == unfolded, render_statement(stmt)


@given(st.integers(0, 10**9))
def test_unfold_is_linear(seed):
    gen = StatementGen(random.Random(seed))
    stmt = gen.statement()
    # one rendered membership atom per leaf occurrence, never more
    leaves = render_statement(stmt).count("X") + render_statement(stmt).count("F")
    assert render(unfold(stmt)).count("∈") <= leaves


def test_family_model():
    a = ("A",)
    fam = IndexedFamily(SORTS["N"], {"n0": rel([SORTS["A"]], [0]), "n1": rel([SORTS["A"]], [2])})
    m = Model(U, {"X": rel([SORTS["A"]], [0, 1])}, {"Y": fam})
    s = Equiv(Intersect(SVar("X", a), indexed_union("Y", "N", a, var="n")),
              IndexedUnion("n", "N", Intersect(SVar("X", a), FamilyApp("Y", "n", a))))
    assert render(unfold(s)) == (
        "forall a, a ∈ X /\\ (exists n : N, a ∈ Y n) <-> (exists n : N, a ∈ X /\\ a ∈ Y n)")
    assert check_soundness(s, m) == (True, True)
