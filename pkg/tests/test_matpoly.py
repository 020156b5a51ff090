import random

import pytest
from hypothesis import given, settings

from mopforge.errors import SizeMismatch
from mopforge.matpoly import MatPoly, Poly, matpoly_conj_transpose, matpoly_mul, random_matpoly
from mopforge.scalar import Scalar
from mopforge.weight import t_matrix

from conftest import matpolys

x = Poly.x()


def test_T_times_T_of_minus_x_is_identity(params):
    T, Tinv = t_matrix(params)
    assert matpoly_mul(T, Tinv) == MatPoly.identity(3)
    assert T.map_entries(lambda e: e.compose(x * -1)) == Tinv


def test_identity_and_squares():
    A = random_matpoly(random.Random(3), 3, 3)
    assert matpoly_mul(A, MatPoly.identity(3)) == A
    X = MatPoly.scalar(3, 1).shift_up(1)
    assert matpoly_mul(X, X) == MatPoly.identity(3).shift_up(2)


def test_size_mismatch():
    with pytest.raises(SizeMismatch):
        matpoly_mul(MatPoly.identity(2), MatPoly.identity(3))


def test_conj_transpose_of_T(params):
    T, _ = t_matrix(params)
    Ts = matpoly_conj_transpose(T)
    assert Ts[1, 0] == x * params.a and Ts[0, 1].is_zero()
    assert Ts[1, 2] == x * params.c


def test_hermitian_fixed_point(W):
    for payload in W.W.terms.values():
        assert payload.conj_transpose() == payload


def test_conj_transpose_involution():
    A = random_matpoly(random.Random(11), 3, 4)
    assert A.conj_transpose().conj_transpose() == A


def test_degree_bound():
    r = random.Random(5)
    A, B = random_matpoly(r, 3, 2), random_matpoly(r, 3, 3)
    assert (A * B).degree <= A.degree + B.degree


def test_poly_helpers():
    p = Poly((1, 2, 3))
    assert p.derivative() == Poly((2, 6))
    assert p.compose(x + 1) == Poly((6, 8, 3))
    assert p(Scalar(2)) == Scalar(17)
    assert Poly.from_json(p.to_json()) == p
    A = random_matpoly(random.Random(2), 3, 2)
    assert MatPoly.from_json(A.to_json()) == A


@settings(max_examples=60)
@given(matpolys(), matpolys(), matpolys())
def test_associative_and_distributive(A, B, C):
    assert (A * B) * C == A * (B * C)
    assert A * (B + C) == A * B + A * C


@settings(max_examples=60)
@given(matpolys(), matpolys())
def test_conj_transpose_anti_automorphism(A, B):
    assert (A * B).conj_transpose() == B.conj_transpose() * A.conj_transpose()


def test_associativity_degree4_seeded():
    r = random.Random(2024)
    for _ in range(5):
        A, B, C = (random_matpoly(r, 3, 4) for _ in range(3))
        assert (A * B) * C == A * (B * C)
