from __future__ import annotations

import itertools

import pytest

from prohecke.weyl import (
    GroupDatum,
    WeylError,
    affine_generator,
    antidiag,
    closed_form_length,
    diag,
    elements_up_to_length,
    finite_torus,
    identity,
    is_length_zero,
    is_positive,
    length,
    pi_element,
    recompose,
    reduced_word,
    z_element,
)

GROUPS = [GroupDatum.sl2(5), GroupDatum.gl2(5), GroupDatum.sl2(7), GroupDatum.gl2(7)]


@pytest.mark.parametrize("D", GROUPS, ids=str)
def test_generators_square_into_finite_torus(D):
    for i in (0, 1):
        s = affine_generator(D, i)
        assert (s * s).is_finite_torus
        assert length(s) == 1
    if D.kind == "SL2":
        assert affine_generator(D, 1) * affine_generator(D, 1) == diag(D, (-1, -1))


def test_multiply_examples():
    G = GroupDatum.gl2(5)
    w = affine_generator(G, 0) * affine_generator(G, 1)
    assert identity(G) * w == w
    assert pi_element(G) * affine_generator(G, 1) == diag(G, (1, 1), (0, 1))


@pytest.mark.parametrize("D", GROUPS, ids=str)
def test_length_examples(D):
    assert length(identity(D)) == 0
    assert all(length(t) == 0 for t in finite_torus(D))
    if D.kind == "SL2":
        assert length(diag(D, (1, 1), (1, -1))) == 2
    else:
        assert length(pi_element(D)) == 0


@pytest.mark.parametrize("D", GROUPS, ids=str)
def test_length_matches_closed_form(D):
    for w in elements_up_to_length(D, 4):
        assert length(w) == closed_form_length(w)
    for a, b in itertools.product(range(-3, 4), repeat=2):
        if D.kind == "SL2" and a + b != 0:
            continue
        t = diag(D, (1, 1), (a, b))
        assert length(t) == abs(a - b)


def test_reduced_word_examples():
    G = GroupDatum.gl2(5)
    t = diag(G, (2, 3))
    assert reduced_word(t) == (t, ())
    w = affine_generator(G, 0) * affine_generator(G, 1)
    assert reduced_word(w) == (identity(G), (0, 1))
    om, word = reduced_word(diag(G, (1, 1), (0, 1)))
    assert om == pi_element(G) and word == (1,)


@pytest.mark.parametrize("D", GROUPS[:2], ids=str)
def test_subadditivity_inverse_and_roundtrip(D):
    els = elements_up_to_length(D, 4, pi_range=0)
    sample = els[:: max(1, len(els) // 60)]
    for u in sample:
        assert length(u) == length(u.inverse())
        om, word = reduced_word(u)
        assert is_length_zero(om)
        assert recompose(om, word) == u and len(word) == length(u)
    for u, v in itertools.product(sample, repeat=2):
        assert length(u * v) <= length(u) + length(v)


def test_associativity_of_group_law():
    G = GroupDatum.gl2(5)
    els = elements_up_to_length(G, 2, pi_range=0)[::7]
    for a, b, c in itertools.product(els[:12], repeat=3):
        assert (a * b) * c == a * (b * c)


def test_positivity():
    G = GroupDatum.gl2(5)
    assert is_positive(identity(G))
    assert is_positive(diag(G, (1, 1), (1, 0)))
    assert not is_positive(diag(G, (1, 1), (0, 1)))
    assert is_positive(diag(G, (1, 1), (1, 1)))
    with pytest.raises(WeylError):
        is_positive(pi_element(G))
    pos = [diag(G, (1, 2), (a, b)) for a in range(-2, 3) for b in range(-2, 3) if a >= b]
    assert all(is_positive(x * y) for x in pos for y in pos)


@pytest.mark.parametrize("D", GROUPS[:2], ids=str)
def test_z_inverse_is_positive(D):
    z = z_element(D)
    assert not is_positive(z) and is_positive(z.inverse())
    assert length(z.inverse()) == (1 if D.kind == "GL2" else 2)


def test_sl2_rejects_non_special():
    D = GroupDatum.sl2(5)
    with pytest.raises(WeylError):
        diag(D, (2, 2))
    with pytest.raises(WeylError):
        antidiag(D, (1, 0), (1, 0))


def test_datum_rejects_small_primes():
    with pytest.raises(WeylError):
        GroupDatum.gl2(3)
