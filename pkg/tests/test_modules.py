from __future__ import annotations

import itertools
from functools import lru_cache

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from prohecke import modules as M
from prohecke.algebra import HeckeAlgebraDescriptor, HeckeElement, mul
from prohecke.enumeration import canonical_form, enumerate_gl2, enumerate_sl2
from prohecke.functors import LeviDatum, induce
from prohecke.linalg import Matrix
from prohecke.modules import (
    GroupCharacter,
    ModuleError,
    SmoothCharacter,
    classify_simples,
    composition_factors,
    direct_sum,
    hom_space,
    is_isomorphic,
    is_simple,
    is_supersingular,
    make_character,
    make_dual,
    make_twist,
    power,
    supersingular_gl2,
    supersingular_sl2,
    torus_characters_trivial_on,
)
from prohecke.weyl import affine_generator, elements_up_to_length, generators, identity, length, pi_element


@lru_cache(maxsize=None)
def desc(kind: str, p: int = 5) -> HeckeAlgebraDescriptor:
    return HeckeAlgebraDescriptor.make(kind, p)


@lru_cache(maxsize=None)
def sample_modules(kind: str, p: int = 5) -> tuple:
    d = desc(kind, p)
    L = LeviDatum.torus(d)
    F = d.field
    n = L.levi.datum.n
    abar = SmoothCharacter(F, (1, -1), (1, 1)) if kind == "GL2" else SmoothCharacter(F, (2,), (1,))
    chi = SmoothCharacter(F, (1, 0), (2, 3)) if kind == "GL2" else SmoothCharacter(F, (1,), (2,))
    mods = [
        make_character(d, "triv"),
        make_character(d, "sign"),
        make_character(d, "sign_star"),
        induce(L, SmoothCharacter.trivial(F, n)),
        induce(L, abar),
        induce(L, chi),
    ]
    mods.append(supersingular_gl2(d, 1) if kind == "GL2" else supersingular_sl2(d, 1))
    return tuple(mods)


# -- characters

def test_character_examples():
    d = desc("GL2")
    assert make_character(d, "triv").gens["s1"] == Matrix(d.field, [[0]])
    assert make_character(d, "sign").gens["s1"] == Matrix(d.field, [[4]])
    star = make_character(d, "sign_star")
    assert star.gens["pi"] == Matrix(d.field, [[4]]) and star.gens["s0"] == Matrix(d.field, [[4]])
    with pytest.raises(ModuleError, match="quadratic"):
        make_character(d, "custom", {"s0": 2, "s1": 2, "t1": 1, "t2": 1, "pi": 1})


def test_evaluate_examples():
    d = desc("GL2")
    triv = make_character(d, "triv")
    G = d.datum
    assert triv.evaluate(identity(G)) == Matrix.identity(d.field, 1)
    assert triv.evaluate(affine_generator(G, 1)) == Matrix(d.field, [[0]])
    assert triv.evaluate(pi_element(G)) == Matrix(d.field, [[1]])


@pytest.mark.parametrize("kind", ["GL2", "SL2"])
def test_characters_trivial_on_length_zero(kind):
    d = desc(kind)
    from prohecke.weyl import length_zero_generators

    chars = torus_characters_trivial_on(d, length_zero_generators(d.datum))
    values = sorted(tuple(m.gens[f"s{i}"][0, 0] for i in (0, 1)) for m in chars)
    if kind == "GL2":
        assert values == [(0, 0), (4, 4)]
    else:
        # the affine generators are independent for SL2, so all four pairs occur
        assert values == [(0, 0), (0, 4), (4, 0), (4, 4)]


def test_group_character_checks():
    d = desc("GL2")
    G, F = d.datum, d.field
    with pytest.raises(ModuleError):
        GroupCharacter(G, F, lambda w: 2, "constant")
    xi = GroupCharacter.det(G, F, r=1)
    s = affine_generator(G, 1)
    assert xi.value(s * s) == F.mul(xi.value(s), xi.value(s))


# -- the module action is a representation of the algebra

@pytest.mark.parametrize("kind", ["GL2", "SL2"])
def test_action_is_multiplicative(kind):
    d = desc(kind)
    els = elements_up_to_length(d.datum, 2, pi_range=1 if kind == "GL2" else 0)
    els = els[:: max(1, len(els) // 25)]
    for m in sample_modules(kind)[3:5]:
        for u, v in itertools.product(els, repeat=2):
            prod = mul(HeckeElement.basis(d, u), HeckeElement.basis(d, v))
            assert m.act(prod) == m.evaluate(u) @ m.evaluate(v)


def test_relation_audit_rejects_bad_matrices():
    d = desc("SL2")
    F = d.field
    good = make_character(d, "triv").gens
    with pytest.raises(ModuleError, match="quadratic"):
        M.HeckeModule(d, {**good, "s1": Matrix(F, [[1]])})
    with pytest.raises(ModuleError, match="invertible"):
        M.HeckeModule(d, {**good, "t": Matrix(F, [[0]])})
    with pytest.raises(ModuleError, match="generator names"):
        M.HeckeModule(d, {"s1": Matrix(F, [[0]])})


# -- duality and twists

@pytest.mark.parametrize("kind", ["GL2", "SL2"])
def test_dual_is_an_involution(kind):
    for m in sample_modules(kind):
        assert bool(is_isomorphic(make_dual(make_dual(m)), m))


@pytest.mark.parametrize("kind", ["GL2", "SL2"])
def test_hom_dimension_is_dual_invariant(kind):
    mods = sample_modules(kind)
    for a, b in itertools.product(mods, repeat=2):
        assert hom_space(a, b).dim == hom_space(make_dual(b), make_dual(a)).dim


def test_trivial_character_self_dual():
    for kind in ("GL2", "SL2"):
        triv = make_character(desc(kind), "triv")
        assert bool(is_isomorphic(make_dual(triv), triv))


def test_twist_by_trivial_and_composition():
    d = desc("GL2")
    G, F = d.datum, d.field
    m = sample_modules("GL2")[5]
    assert make_twist(m, GroupCharacter.trivial(G, F)).gens == m.gens
    a, b = GroupCharacter.det(G, F, r=1), GroupCharacter.det(G, F, r=2, c=3)
    ab = GroupCharacter.det(G, F, r=3, c=3)
    assert make_twist(make_twist(m, a), b).gens == make_twist(m, ab).gens


# -- isomorphism testing

def _random_invertible(F, n, seed):
    import random

    rng = random.Random(seed)
    while True:
        B = Matrix(F, [[rng.randrange(F.q) for _ in range(n)] for _ in range(n)])
        if B.is_invertible():
            return B


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from(range(7)))
def test_change_of_basis_is_isomorphic(seed, idx):
    m = sample_modules("GL2")[idx]
    B = _random_invertible(m.field, m.dim, seed)
    n = M.change_basis(m, B)
    res = is_isomorphic(m, n)
    assert res.status == "iso"
    X = res.witness
    assert all(m.gens[k] @ X == X @ n.gens[k] for k in m.gens)


def test_non_isomorphic_and_inconclusive(monkeypatch):
    d = desc("GL2")
    triv, sign = make_character(d, "triv"), make_character(d, "sign")
    assert is_isomorphic(triv, sign).status == "not_iso"
    assert is_isomorphic(triv, power(triv, 2)).status == "not_iso"
    # a non-isomorphic pair with equal Hom and End dimensions needs the search
    a = direct_sum([triv, triv, sign])
    b = direct_sum([triv, sign, sign])
    assert is_isomorphic(a, b).status == "not_iso"
    monkeypatch.setattr(M, "ENUMERATION_BUDGET", 1)
    monkeypatch.setattr(M, "RANDOM_TRIES", 0)
    res = is_isomorphic(power(triv, 2), power(triv, 2))
    assert res.status == "inconclusive" and res.value is None
    with pytest.raises(ModuleError, match="inconclusive"):
        bool(res)


# -- composition factors

def test_composition_factors_additive():
    mods = sample_modules("GL2")
    for a, b in itertools.combinations(mods[:5], 2):
        s = direct_sum([a, b])
        assert M.same_factors(composition_factors(s), composition_factors(a) + composition_factors(b))


def test_simplicity():
    mods = sample_modules("GL2")
    assert is_simple(mods[0]) and is_simple(mods[4]) and not is_simple(mods[3])
    with pytest.raises(ModuleError, match="budget"):
        is_simple(power(mods[0], 5))


# -- classification and supersingular modules

@pytest.mark.parametrize("r", range(5))
def test_supersingular_gl2(r):
    m = supersingular_gl2(desc("GL2"), r)
    assert m.dim == 2 and is_simple(m)
    assert M.z_inverse_matrix(m).is_nilpotent()


def test_supersingular_sl2_labels():
    d = desc("SL2")
    F = d.field
    ms = [supersingular_sl2(d, r) for r in range(5)]
    assert (ms[0].gens["s0"][0, 0], ms[0].gens["s1"][0, 0]) == (4, 0)
    assert (ms[4].gens["s0"][0, 0], ms[4].gens["s1"][0, 0]) == (0, 4)
    for r in (1, 2, 3):
        assert ms[r].gens["t"][0, 0] == F.pow(F.inv(2), r)
    assert len({canonical_form(m) for m in ms}) == 5


def test_supersingular_refinement_excludes_trivial_character():
    d = desc("GL2")
    triv = make_character(d, "triv")
    assert M.z_inverse_matrix(triv).is_nilpotent()
    assert not is_supersingular(triv)


@pytest.mark.parametrize("exps", [(0, 0), (1, 0), (2, 0), (1, 3)])
def test_classification_matches_enumeration_gl2(exps):
    d = desc("GL2")
    for dim in (1, 2):
        ours = classify_simples(d, dim, exps)
        assert {canonical_form(m) for m in ours} == enumerate_gl2(5, dim, exps)


@pytest.mark.parametrize("a", range(4))
def test_classification_matches_enumeration_sl2(a):
    d = desc("SL2")
    for dim in (1, 2):
        ours = classify_simples(d, dim, (a,))
        assert {canonical_form(m) for m in ours} == enumerate_sl2(5, dim, a)


def test_classification_rejects_unsupported():
    with pytest.raises(ModuleError):
        classify_simples(desc("GL2"), 3, (0, 0))


def test_smooth_character_arithmetic():
    F = desc("GL2").field
    chi = SmoothCharacter(F, (1, 2), (2, 3))
    assert (chi * chi.inverse()).is_trivial()
    assert chi.conjugate().r == (2, 1)
    assert SmoothCharacter(F, (1,), (2,)).conjugate() == SmoothCharacter(F, (-1,), (3,))
    with pytest.raises(ModuleError):
        SmoothCharacter(F, (1,), (0,))
