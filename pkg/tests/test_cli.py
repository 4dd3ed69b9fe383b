from __future__ import annotations

import json

import pytest

from prohecke.cli import EXIT_FAIL, EXIT_INTERNAL, EXIT_PASS, EXIT_USAGE, main
from prohecke.fixtures import ENV_VAR

GL3_PAGE = """cd = 9
rows 2 3
module triv dim 1 dual triv
E2 0 2 = triv
E2 9 2 = triv
assume split E2 7 3 >= 2
"""


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_run_sl2_trivial_checks_four_pairs(capsys):
    code, out, _ = run(capsys, "run", "sl2.trivial", "--format", "structured")
    assert code == EXIT_PASS
    data = json.loads(out)
    rep, = data["reports"]
    assert rep["status"] == "pass" and rep["config"]["group"] == "SL2"
    pairs = [c for c in rep["checks"] if "vs" in c["name"]]
    assert len(pairs) == 4
    assert all(c["citation"] == "SL2, trivial representation" for c in rep["checks"])
    assert "seconds" not in rep


def test_run_all_passes_and_is_sorted(capsys):
    code, out, _ = run(capsys, "run", "all", "--p", "5", "--format", "structured")
    assert code == EXIT_PASS
    ids = [r["fixture"] for r in json.loads(out)["reports"]]
    assert ids == sorted(ids) and len(ids) == 10


def test_structured_output_is_deterministic(capsys):
    first = run(capsys, "run", "gl2.steinberg", "--format", "structured", "--seed", "3")[1]
    second = run(capsys, "run", "gl2.steinberg", "--format", "structured", "--seed", "3")[1]
    assert first == second


def test_assume_split_reports_contradiction(capsys):
    code, out, _ = run(capsys, "run", "gl3.steinberg", "--assume-split")
    assert code == EXIT_FAIL
    assert "contradiction" in out and "E2 7 3 >= 2" in out
    assert "overall: FAIL" in out


def test_timing_is_opt_in(capsys):
    _, out, _ = run(capsys, "run", "sl2.trivial", "--format", "structured", "--timing")
    assert "seconds" in json.loads(out)["reports"][0]


@pytest.mark.parametrize("argv", [
    ["run", "no.such.fixture"],
    ["run", "all", "--bogus"],
    ["run", "all", "--p", "6"],
    ["run", "all", "--q", "7"],
    ["frobnicate"],
    ["classify", "--group", "GL2", "--dim", "3", "--r", "0"],
    ["dump-algebra", "--max-length", "-1"],
    ["ss-solve", "/nonexistent/page"],
])
def test_usage_errors(capsys, argv):
    assert run(capsys, *argv)[0] == EXIT_USAGE


def test_page_syntax_error_is_usage(capsys, tmp_path):
    f = tmp_path / "bad.page"
    f.write_text("cd = 9\nE2 0 = 1\n")
    code, _, err = run(capsys, "ss-solve", str(f))
    assert code == EXIT_USAGE and "line 2" in err


def test_broken_fixture_is_internal(capsys, tmp_path, monkeypatch):
    (tmp_path / "x.fix").write_text('[fixture x] cite "GL2, trivial representation" group GL2\n'
                                    "table H d 0\n  0 = mystery\nexpect\n  poincare H\nend\n")
    monkeypatch.setenv(ENV_VAR, str(tmp_path))
    code, _, err = run(capsys, "run", "x")
    assert code == EXIT_INTERNAL and "mystery" in err


def test_list(capsys):
    code, out, _ = run(capsys, "list", "--format", "structured")
    assert code == EXIT_PASS
    rows = json.loads(out)
    assert [r["id"] for r in rows][:2] == ["findim.duality", "gl2.ps"]
    assert all(r["cite"] for r in rows)


def test_dump_algebra(capsys):
    code, out, _ = run(capsys, "dump-algebra", "--group", "SL2", "--max-length", "1")
    assert code == EXIT_PASS
    lines = [x for x in out.splitlines() if x.startswith("T[")]
    # identity and the two simple reflections: nine products
    assert len(lines) == 9


def test_ss_solve(capsys, tmp_path):
    f = tmp_path / "gl3.page"
    f.write_text(GL3_PAGE)
    code, out, _ = run(capsys, "ss-solve", str(f), "--format", "structured")
    assert code == EXIT_PASS
    texts = {x["text"] for x in json.loads(out)["facts"]}
    assert {"abutment 0 = 0", "abutment 1 = 0", "abutment 2 iso triv"} <= texts
    code, out, _ = run(capsys, "ss-solve", str(f), "--assume", "split")
    assert code == EXIT_FAIL and "minimal conflicting set" in out


@pytest.mark.parametrize("group, dim, r", [("GL2", 2, 1), ("GL2", 1, 0), ("SL2", 2, 2), ("SL2", 1, 0)])
def test_classify_cross_check(capsys, group, dim, r):
    code, out, _ = run(capsys, "classify", "--group", group, "--dim", str(dim), "--r", str(r),
                       "--cross-check", "--format", "structured")
    assert code == EXIT_PASS
    data = json.loads(out)
    assert data["cross_check"] is True and data["modules"]
