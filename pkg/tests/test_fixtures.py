from __future__ import annotations

import shutil

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from prohecke.fixtures import (
    ENV_VAR,
    Context,
    FixtureError,
    evaluate,
    fixture_dir,
    load_fixture,
    parse_expr,
    parse_fixture,
    registry,
    resolve,
    verify,
)
from prohecke.modules import HeckeModule, is_isomorphic
from prohecke.spectral import Extension

IDS = sorted([
    "findim.duality", "gl2.ps", "gl2.steinberg", "gl2.supersingular", "gl2.trivial",
    "gl3.steinberg", "sl2.ps", "sl2.steinberg", "sl2.supersingular", "sl2.trivial",
])

MINIMAL = """[fixture t.min] cite "GL2, trivial representation" group GL2
table H d 1
  0 = triv
  1 = triv
expect
  poincare H
end
"""


def test_registry_is_generated_from_files():
    assert sorted(registry()) == IDS


@pytest.mark.parametrize("fid", IDS)
def test_round_trip(fid):
    fx = load_fixture(fid)
    text = fx.to_text()
    again = parse_fixture(text)
    assert again.to_text() == text
    assert again.cite == fx.cite and again.group == fx.group


@pytest.mark.parametrize("fid", IDS)
def test_every_fixture_cites_a_source(fid):
    assert load_fixture(fid).cite


@pytest.mark.parametrize("fid", IDS)
def test_fixture_checks_pass_at_p5(fid):
    checks = verify(load_fixture(fid), p=5)
    assert checks
    bad = [c for c in checks if c.status != "pass"]
    assert not bad, bad[:3]


@pytest.mark.parametrize("fid", ["gl2.trivial", "gl2.steinberg", "sl2.ps", "sl2.supersingular"])
def test_fixture_checks_pass_at_p7(fid):
    assert {c.status for c in verify(load_fixture(fid), p=7)} == {"pass"}


def test_checks_carry_citation_and_instance():
    checks = verify(load_fixture("gl2.supersingular"), p=5)
    assert {c.citation for c in checks} == {"GL2, supersingular representations"}
    assert {c.instance for c in checks} == {f"r={r}" for r in range(5)}


def test_split_assumption_makes_page_contradictory():
    checks = verify(load_fixture("gl3.steinberg"), enabled=("split",))
    facts = [c for c in checks if c.name.startswith("page-facts")]
    assert facts and all(c.status == "fail" and "minimal conflicting set" in c.detail for c in facts)


# -- lookups

def test_sl2_trivial_table():
    fx = load_fixture("sl2.trivial")
    ctx = Context("SL2", 5)
    t = fx.table("H", ctx, fx.env(ctx, {}))
    assert [t[i].dim for i in range(4)] == [1, 2, 2, 1]
    assert t[4] == 0


def test_resolve_dotted_names():
    h1 = resolve("gl2.steinberg.h1")
    assert isinstance(h1, HeckeModule) and h1.dim == 3
    ss = resolve("gl2.supersingular.h1")
    assert ss.dim == 3 * resolve("gl2.supersingular.h0").dim == 6
    assert isinstance(resolve("gl2.steinberg.h2"), Extension)
    assert resolve("gl2.trivial").id == "gl2.trivial"


def test_rebinding_table():
    fx = load_fixture("sl2.supersingular")
    ctx = Context("SL2", 5)
    env = fx.env(ctx, {"r": 1})
    k = fx.table("K", ctx, env)
    direct = fx.table("H", ctx, fx.env(ctx, {"r": 3}))
    assert is_isomorphic(k[0], direct[0]).status == "iso"


def test_environment_override(tmp_path, monkeypatch):
    (tmp_path / "t.min.fix").write_text(MINIMAL)
    shutil.copy(fixture_dir() / "sl2.trivial.fix", tmp_path)
    monkeypatch.setenv(ENV_VAR, str(tmp_path))
    assert sorted(registry()) == ["sl2.trivial", "t.min"]
    assert {c.status for c in verify(load_fixture("t.min"))} == {"pass"}


# -- rejections

@pytest.mark.parametrize("text, msg", [
    (MINIMAL.replace('cite "GL2, trivial representation"', 'cite ""'), "citation"),
    (MINIMAL.replace("group GL2", "group GL4"), "unsupported group"),
    (MINIMAL.replace("poincare H", "poincare Q"), "unknown table"),
    (MINIMAL.replace("poincare H", "frobnicate H"), "unknown relation"),
    (MINIMAL.replace("end\n", ""), "missing end"),
    (MINIMAL.replace("  1 = triv", "  2 = triv"), "above d"),
    (MINIMAL.replace("expect\n  poincare H", "expect\n  conflict split = \"x\""), "page block"),
    (MINIMAL.replace("group GL2", "group GL3"), "only page relations"),
    ("table H d 1\nend\n", "expected [fixture"),
    (MINIMAL.replace("  0 = triv", "  0 = triv +"), ":3:"),
])
def test_rejections(text, msg):
    with pytest.raises(FixtureError, match=msg.replace("[", r"\[")):
        parse_fixture(text)


def test_unknown_fixture():
    with pytest.raises(FixtureError, match="unknown fixture"):
        load_fixture("gl2.nothing")


def test_evaluation_errors_name_the_fixture(tmp_path, monkeypatch):
    (tmp_path / "t.bad.fix").write_text(MINIMAL.replace("t.min", "t.bad").replace("  1 = triv", "  1 = mystery"))
    monkeypatch.setenv(ENV_VAR, str(tmp_path))
    with pytest.raises(FixtureError, match="t.bad.*mystery"):
        verify(load_fixture("t.bad"))


# -- expressions

@pytest.mark.parametrize("text", [
    "ind(inv(chi) * abar)",
    "ext(ind(chi)^2, dual(ind(psi)), not(nonsplit))",
    "if(and(lt(0, r), lt(r, p - 1)), ss(r)^2, ss(0) + ss(p - 1))",
    "twist(ss(r), det(-r, 1))",
    "p - 1 - r",
])
def test_expression_round_trip(text):
    node = parse_expr(text)
    assert str(parse_expr(str(node))) == str(node)


@settings(max_examples=50, deadline=None)
@given(st.integers(-20, 20), st.integers(-20, 20), st.integers(0, 3))
def test_integer_arithmetic(a, b, k):
    ctx = Context("GL2", 5)
    env = {"a": a, "b": b}
    assert evaluate(parse_expr("a - b - 1"), env, ctx) == a - b - 1
    assert evaluate(parse_expr("-a + b"), env, ctx) == -a + b
    assert evaluate(parse_expr("lt(a, b)"), env, ctx) == (a < b)
    assert str(parse_expr(str(parse_expr("a - (b - 1)")))) == str(parse_expr("a - (b - 1)"))
