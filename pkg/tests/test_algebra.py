from __future__ import annotations

import itertools
import random

import pytest

from prohecke.algebra import (
    AlgebraError,
    HeckeAlgebraDescriptor,
    HeckeElement,
    basis_product,
    canonical_elements,
    mul,
    quadratic_coefficient,
    theta_embed,
)
from prohecke.weyl import (
    GroupDatum,
    affine_generator,
    diag,
    finite_torus,
    identity,
    is_length_zero,
    length,
    pi_element,
    primitive_root,
    torus_of,
)


def T(desc, w, c=1):
    return HeckeElement.basis(desc, w, c)


# -- independent oracle: convolution in the finite Hecke algebra of G(F_p) relative to U

def _mat_mul(a, b, p):
    return (
        (a[0] * b[0] + a[1] * b[2]) % p,
        (a[0] * b[1] + a[1] * b[3]) % p,
        (a[2] * b[0] + a[3] * b[2]) % p,
        (a[2] * b[1] + a[3] * b[3]) % p,
    )


def _mat_inv(a, p):
    det = (a[0] * a[3] - a[1] * a[2]) % p
    di = pow(det, p - 2, p)
    return (a[3] * di % p, -a[1] * di % p, -a[2] * di % p, a[0] * di % p)


def finite_square_coefficients(s, p):
    """Coefficients of T_s * T_s on monomial matrices, where T_g is the indicator of U g U."""
    U = [(1, b, 0, 1) for b in range(p)]
    double = {_mat_mul(_mat_mul(u, s, p), v, p) for u in U for v in U}
    monomials = [(a, 0, 0, d) for a in range(1, p) for d in range(1, p)]
    monomials += [(0, b, c, 0) for b in range(1, p) for c in range(1, p)]
    out = {}
    for x in monomials:
        # U s U is the disjoint union of the cosets u s U
        count = sum(1 for u in U if _mat_mul(_mat_inv(_mat_mul(u, s, p), p), x, p) in double)
        if count % p:
            out[x] = count % p
    return out


def as_matrix(w):
    p = w.datum.p
    m = [0, 0, 0, 0]
    for i, j in enumerate(w.perm):
        assert w.vals[i] == 0
        m[2 * i + j] = w.units[i] % p
    return tuple(m)


@pytest.mark.parametrize("kind", ["GL2", "SL2"])
@pytest.mark.parametrize("p", [5, 7])
def test_quadratic_relation_against_finite_convolution(kind, p):
    desc = HeckeAlgebraDescriptor.make(kind, p)
    s = affine_generator(desc.datum, 1)
    ours = mul(T(desc, s), T(desc, s))
    ours_mat = {as_matrix(w): c for w, c in ours.terms.items()}
    assert ours_mat == finite_square_coefficients(as_matrix(s), p)


@pytest.mark.parametrize("kind", ["GL2", "SL2"])
def test_quadratic_coefficient_of_s0_is_conjugate(kind):
    # s0 is the conjugate of s1 under Pi (an outer automorphism for SL2), which
    # carries the coefficient of s1 to that of s0.
    desc = HeckeAlgebraDescriptor.make(kind, 5)
    G = desc.datum
    s0 = affine_generator(G, 0)
    sq = mul(T(desc, s0), T(desc, s0))
    assert sq == mul(quadratic_coefficient(desc, 0), T(desc, s0))
    swap = {t.units[::-1] for t in desc.quadratic(1)}
    assert swap == {t.units for t in desc.quadratic(0)}


@pytest.mark.parametrize("kind", ["GL2", "SL2"])
def test_multiplication_examples(kind):
    desc = HeckeAlgebraDescriptor.make(kind, 5)
    G = desc.datum
    s0, s1 = affine_generator(G, 0), affine_generator(G, 1)
    one = HeckeElement.one(desc)
    w = s0 * s1
    assert mul(one, T(desc, w)) == T(desc, w)
    assert mul(T(desc, s1), T(desc, s1)) == mul(quadratic_coefficient(desc, 1), T(desc, s1))
    assert mul(T(desc, s0), T(desc, s1)) == T(desc, s0 * s1)
    assert length(s0 * s1) == 2


def _decorated(desc, max_length):
    G = desc.datum
    g = primitive_root(G.p)
    tors = [identity(G), diag(G, (g, 1) if G.kind == "GL2" else (g, pow(g, G.p - 2, G.p)))]
    return [t * w for w in canonical_elements(desc, max_length) for t in tors]


@pytest.mark.parametrize("kind", ["GL2", "SL2"])
def test_associativity_exhaustive_small(kind):
    desc = HeckeAlgebraDescriptor.make(kind, 5)
    els = _decorated(desc, 2)
    for u, v, w in itertools.product(els, repeat=3):
        a, b, c = T(desc, u), T(desc, v), T(desc, w)
        assert mul(mul(a, b), c) == mul(a, mul(b, c))


@pytest.mark.parametrize("kind", ["GL2", "SL2"])
@pytest.mark.parametrize("p", [5, 7])
def test_associativity_random(kind, p):
    desc = HeckeAlgebraDescriptor.make(kind, p)
    G = desc.datum
    rng = random.Random(1234 + p)
    pool = canonical_elements(desc, 5)
    tors = list(finite_torus(G))
    for _ in range(40):
        u, v, w = (rng.choice(tors) * rng.choice(pool) for _ in range(3))
        a, b, c = T(desc, u), T(desc, v), T(desc, w)
        assert mul(mul(a, b), c) == mul(a, mul(b, c))


@pytest.mark.parametrize("kind", ["GL2", "SL2"])
def test_length_zero_invertible(kind):
    desc = HeckeAlgebraDescriptor.make(kind, 5)
    G = desc.datum
    oms = list(finite_torus(G))
    if kind == "GL2":
        oms += [pi_element(G), pi_element(G).inverse() * diag(G, (2, 3))]
    for om in oms:
        assert is_length_zero(om)
        assert mul(T(desc, om), T(desc, om.inverse())) == HeckeElement.one(desc)


@pytest.mark.parametrize("kind", ["GL2", "SL2"])
def test_quadratic_coefficient_central_in_finite_torus_and_covariant(kind):
    desc = HeckeAlgebraDescriptor.make(kind, 5)
    G = desc.datum
    for i in (0, 1):
        c = quadratic_coefficient(desc, i)
        s = affine_generator(G, i)
        for t in finite_torus(G):
            assert mul(c, T(desc, t)) == mul(T(desc, t), c)
        # T_s c_s = c_s T_s: the support is stable under conjugation by s
        assert mul(T(desc, s), c) == mul(c, T(desc, s))
    if kind == "GL2":
        pi = pi_element(G)
        c0, c1 = quadratic_coefficient(desc, 0), quadratic_coefficient(desc, 1)
        assert mul(mul(T(desc, pi), c1), T(desc, pi.inverse())) == c0


def test_theta_embed():
    desc = HeckeAlgebraDescriptor.make("GL2", 5)
    tdesc = HeckeAlgebraDescriptor(torus_of(desc.datum), desc.field)
    Tt = tdesc.datum
    assert theta_embed(HeckeElement.one(tdesc), desc) == HeckeElement.one(desc)
    x = T(tdesc, diag(Tt, (1, 1), (1, 0)))
    assert theta_embed(x, desc) == T(desc, diag(desc.datum, (1, 1), (1, 0)))
    with pytest.raises(AlgebraError, match="positive"):
        theta_embed(T(tdesc, diag(Tt, (1, 1), (0, 1))), desc)


def test_theta_multiplicative_on_positive_part():
    for kind in ("GL2", "SL2"):
        desc = HeckeAlgebraDescriptor.make(kind, 5)
        tdesc = HeckeAlgebraDescriptor(torus_of(desc.datum), desc.field)
        Tt = tdesc.datum
        if kind == "GL2":
            pos = [diag(Tt, (u, v), (a, b)) for u in (1, 2) for v in (1, 3) for a in range(3) for b in range(3) if a >= b]
        else:
            pos = [diag(Tt, (u,), (a,)) for u in (1, 2, 4) for a in range(3)]
        for x, y in itertools.product(pos, repeat=2):
            lhs = theta_embed(mul(T(tdesc, x), T(tdesc, y)), desc)
            rhs = mul(theta_embed(T(tdesc, x), desc), theta_embed(T(tdesc, y), desc))
            assert lhs == rhs


def test_descriptor_mismatch():
    a = HeckeAlgebraDescriptor.make("GL2", 5)
    b = HeckeAlgebraDescriptor.make("SL2", 5)
    with pytest.raises(AlgebraError):
        mul(HeckeElement.one(a), HeckeElement.one(b))


def test_basis_product_coefficients_are_small_integers():
    desc = HeckeAlgebraDescriptor.make("SL2", 5)
    els = canonical_elements(desc, 3)
    for u, v in itertools.product(els, repeat=2):
        assert all(c > 0 for _, c in basis_product(u, v))
