from __future__ import annotations

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from prohecke.field import GF, FieldError
from prohecke.linalg import LinAlgError, Matrix, eventual_image, rank_solve, solve_rows


F5 = GF(5)


@pytest.mark.parametrize("p,e", [(2, 1), (3, 1), (5, 1), (7, 1), (2, 2), (3, 2), (2, 3), (5, 2), (7, 2)])
def test_field_axioms_exhaustive(p, e):
    F = GF(p, e)
    els = list(F.elements())
    assert len(els) == F.q <= 49
    for a in els:
        assert F.sum([a] * p) == 0
        assert F.add(a, F.neg(a)) == 0
        if a:
            assert F.mul(a, F.inv(a)) == 1
    for a, b in itertools.product(els, repeat=2):
        assert F.add(a, b) == F.add(b, a)
        assert F.mul(a, b) == F.mul(b, a)
    for a, b, c in itertools.product(els[: min(len(els), 9)], repeat=3):
        assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
        assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
    # the unit group is cyclic of order q - 1
    assert len({F.pow(F.generator, k) for k in range(F.q - 1)}) == F.q - 1


def test_field_rejects_composite():
    with pytest.raises(FieldError):
        GF(6)


def test_rank_examples():
    assert rank_solve(Matrix.zeros(F5, 2), [0, 0]).rank == 0
    assert Matrix.identity(F5, 3).rank() == 3
    assert Matrix(F5, [[1, 2], [2, 4]]).rank() == 1


def test_rank_solve_affine_and_inconsistent():
    A = Matrix(F5, [[1, 2], [2, 4]])
    res = rank_solve(A, [1, 2])
    assert res.consistent and res.rank == 1 and res.kernel.nrows == 1
    x = res.particular
    assert [(A.rows[i][0] * x[0] + A.rows[i][1] * x[1]) % 5 for i in range(2)] == [1, 2]
    assert not rank_solve(A, [1, 0]).consistent
    with pytest.raises(LinAlgError):
        rank_solve(A, [1])


def test_eventual_image_examples():
    E = eventual_image(Matrix.identity(F5, 3))
    assert E.dim == 3
    nil = Matrix(F5, [[0, 1, 2], [0, 0, 3], [0, 0, 0]])
    assert eventual_image(nil).dim == 0
    E = eventual_image(Matrix.diag(F5, [0, 2]))
    assert E.basis == Matrix(F5, [[0, 1]])
    assert E.restriction == Matrix(F5, [[2]])
    with pytest.raises(LinAlgError):
        eventual_image(Matrix(F5, [[1, 2]]))


def matrices(n_max=4, p=5):
    return st.integers(1, n_max).flatmap(
        lambda n: st.lists(st.lists(st.integers(0, p - 1), min_size=n, max_size=n), min_size=n, max_size=n)
    ).map(lambda rows: Matrix(GF(p), rows))


@settings(max_examples=150, deadline=None)
@given(matrices())
def test_rank_nullity(A):
    assert A.rank() + A.nullspace().nrows == A.ncols
    assert (A @ A.nullspace().T()).is_zero()


@settings(max_examples=150, deadline=None)
@given(matrices())
def test_eventual_image_stabilises(A):
    n = A.nrows
    a = (A ** n).row_space()
    b = (A ** (n + 1)).row_space()
    assert a == b
    E = eventual_image(A)
    assert E.restriction.is_invertible() or E.dim == 0
    assert E.basis @ A == E.restriction @ E.basis


@settings(max_examples=100, deadline=None)
@given(matrices(3))
def test_inverse_and_det(A):
    if A.det() == 0:
        assert not A.is_invertible()
    else:
        assert A @ A.inverse() == Matrix.identity(A.field, A.nrows)


def test_solve_rows():
    B = Matrix(F5, [[1, 0, 1], [0, 1, 1]])
    assert solve_rows(B, [2, 3, 0]) == (2, 3)
    assert solve_rows(B, [1, 1, 1]) is None


def test_extension_field_smoke():
    F = GF(5, 2)
    M = Matrix(F, [[F.generator, 1], [0, F.generator]])
    assert (M @ M.inverse()) == Matrix.identity(F, 2)
    assert M.rank() == 2
