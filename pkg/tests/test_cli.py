import io
import json
import subprocess
import sys

import pytest

from relsem import cli
from relsem import laws as L
from test_laws import BROKEN


def run(*argv):
    out = io.StringIO()
    code = cli.main(list(argv), out)
    return code, out.getvalue()


@pytest.fixture
def files(tmp_path):
    def write(name, text):
        p = tmp_path / name
        p.write_text(text)
        return str(p)
    return write


def test_denote_skip_prints_identity(files):
    u = files("u.cfg", "var x : 0..1\n")
    code, out = run("denote", files("p.imp", "skip"), "--universe", u)
    assert code == 0
    assert out.splitlines()[:2] == ["(x=0) -> (x=0)", "(x=1) -> (x=1)"]
    assert "fixpoint reached: true" in out


def test_denote_while_table(files):
    u = files("u.cfg", "var x : 0..3\n")
    code, out = run("denote", files("w.imp", "while (x<2) do {x:=x+1}"), "--universe", u)
    assert code == 0
    assert out.splitlines()[:4] == ["(x=0) -> (x=2)", "(x=1) -> (x=2)",
                                    "(x=2) -> (x=2)", "(x=3) -> (x=3)"]
    assert "states: 4" in out


def test_denote_traced(files):
    u = files("u.cfg", "var x : 0..1\nevent a = 1\nevent b = 2\n")
    code, out = run("denote", files("t.imp", "write(1); write(2)"), "--universe", u,
                    "--flavor", "traced")
    assert code == 0
    assert out.splitlines()[0] == "(x=0) -[a,b]-> (x=0)"


def test_equiv_verdicts(files):
    u = files("u.cfg", "var x : 0..3\n")
    a, b = files("a.imp", "x := 1"), files("b.imp", "x := 2")
    code, out = run("equiv", a, b, "--universe", u)
    assert code == 1
    assert out.splitlines() == ["DISTINCT", "(x=0) -> (x=1) only in first program"]
    lhs = files("l.imp", "if (x < 2) then { x := 0 } else { skip }; x := x + 1")
    rhs = files("r.imp", "if (x < 2) then { x := 0; x := x + 1 } else { skip; x := x + 1 }")
    for flavor in ("plain", "nrminf"):
        assert run("equiv", lhs, rhs, "--universe", u, "--flavor", flavor) == (0, "EQUIV\n")


def test_parse_roundtrip(files):
    code, out = run("parse", files("p.imp", "x:=1;\nwhile (x<2) do {x:=x+1}"))
    assert code == 0
    assert out.strip() == "x := 1; while (x < 2) do { x := (x + 1) }"


@pytest.mark.parametrize("argv", [
    ["bogus"],
    ["denote"],
    ["denote", "missing.imp"],
    ["laws", "--cases", "0"],
    ["laws", "--law", "no-such-law", "--cases", "1"],
])
def test_usage_errors_exit_2(argv):
    assert run(*argv)[0] == 2


def test_parse_and_config_errors_exit_2(files):
    u = files("u.cfg", "var x : 0..1\n")
    assert run("denote", files("bad.imp", "x := "), "--universe", u)[0] == 2
    assert run("denote", files("y.imp", "y := 1"), "--universe", u)[0] == 2
    bad_u = files("bad.cfg", "var x : 2..1\n")
    assert run("denote", files("s.imp", "skip"), "--universe", bad_u)[0] == 2
    assert run("unfold", "X <= ")[0] == 2


def test_unfold_inline_and_file(files):
    code, out = run("unfold", "X <= Y + Z", "--sig", "A*B")
    assert code == 0
    assert out.strip() == r"forall a b, (a, b) ∈ X -> (a, b) ∈ Y \/ (a, b) ∈ Z"
    stmt = files("s.txt", "rel T : A*list*B\n(1,[a],2) in empty\n")
    assert run("unfold", stmt) == (0, "False\n")


def test_unfold_with_model(files):
    model = {"sorts": {"A": [0, 1], "B": [0, 1]},
             "sets": {"X": [[0, 1]], "Y": [[0, 1], [1, 1]], "Z": []}}
    m = files("m.json", json.dumps(model))
    code, out = run("unfold", "X <= Y + Z", "--sig", "A*B", "--model", m)
    assert code == 0
    assert out.splitlines()[1:] == ["direct: true", "unfolded: true"]
    code, out = run("unfold", "Y <= X + Z", "--sig", "A*B", "--model", m)
    assert code == 0
    assert out.splitlines()[1:] == ["direct: false", "unfolded: false"]


def test_unfold_traced_model(files):
    model = {"sorts": {"A": [0, 1]}, "events": ["a", "b"],
             "sets": {"R": [[0, ["a"], 1]], "S": [[1, ["b"], 0]]}}
    m = files("m.json", json.dumps(model))
    stmt = files("s.txt", "rel R : A*list*A\nrel S : A*list*A\n(0,[a,b],0) in R ; S\n")
    code, out = run("unfold", stmt, "--model", m)
    assert (code, out.splitlines()[1:]) == (0, ["direct: true", "unfolded: true"])


def test_laws_report_is_deterministic():
    first = run("laws", "--cases", "15", "--seed", "3")
    second = run("laws", "--cases", "15", "--seed", "3")
    assert first == second
    code, out = first
    assert code == 0
    assert all(line.startswith("PASS") for line in out.splitlines()[:-1])


def test_laws_mutant_fails(monkeypatch):
    monkeypatch.setattr(L, "catalog", lambda: [BROKEN])
    code, out = run("laws", "--cases", "20")
    assert code == 1
    assert out.startswith("FAIL Sets_union_comm_mutant")
    assert "counterexample:" in out


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "relsem.cli", "laws", "--cases", "2",
                           "--law", "Sets_union_comm"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.splitlines()[0] == "PASS Sets_union_comm (2 cases)"
