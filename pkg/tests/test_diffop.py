import random
from fractions import Fraction

import pytest

from mopforge.diffop import (
    DiffOp,
    ExpDiffOp,
    apply_right,
    compose,
    conjugate_by_polynomial,
    conjugate_by_weight_diag,
    degree_profile_ok,
    formal_adjoint,
    formal_W_adjoint,
)
from mopforge.dwalgebra import delta_op
from mopforge.errors import NonPolynomialAdjoint, NotInverse, SizeMismatch
from mopforge.expfun import ExpPoly
from mopforge.matpoly import MatPoly, Poly, random_matpoly
from mopforge.orthopoly import hermite_monic

x = Poly.x()
I3 = MatPoly.identity(3)


def random_op(r, order=2, degree=2, n=3):
    return DiffOp([random_matpoly(r, n, degree) for _ in range(order + 1)], n)


def scalar_mat(p):
    return MatPoly([[p]])


def test_hermite_eigenfunction_of_shifted_delta():
    b = Fraction(1)
    h1 = scalar_mat(hermite_monic(1, b))
    assert apply_right(h1, delta_op(b)) == h1 * -2


def test_constant_matrix_sees_only_F0():
    D = random_op(random.Random(0))
    assert apply_right(I3, D) == D.coeff(0)


def test_h2_under_delta():
    h2 = hermite_monic(2)
    assert h2 == Poly((Fraction(-1, 2), 0, 1))
    assert apply_right(scalar_mat(h2), delta_op(0)) == scalar_mat(h2) * -4


def test_generators_commute(g):
    assert (compose(g.D1, g.D2) - compose(g.D2, g.D1)).is_zero()


def test_compose_identity():
    D = random_op(random.Random(1))
    assert compose(D, DiffOp.identity(3)) == D and compose(DiffOp.identity(3), D) == D


def test_partial_then_multiply_by_x():
    E = compose(DiffOp.partial(3), DiffOp.mult(I3 * x))
    r = random.Random(7)
    for _ in range(20):
        P = random_matpoly(r, 3, 3)
        assert apply_right(P, E) == P.derivative() * x
        assert apply_right(P, E) == apply_right(apply_right(P, DiffOp.partial(3)), DiffOp.mult(I3 * x))


def test_size_mismatch():
    with pytest.raises(SizeMismatch):
        compose(DiffOp.identity(2), DiffOp.identity(3))
    with pytest.raises(SizeMismatch):
        apply_right(MatPoly.identity(2), DiffOp.identity(3))


def test_formal_adjoint_examples():
    d = DiffOp.partial(3)
    assert formal_adjoint(d) == d * -1
    F = random_matpoly(random.Random(4), 3, 2)
    assert formal_adjoint(DiffOp.mult(F)) == DiffOp.mult(F.conj_transpose())
    d2 = DiffOp.partial(3, 2)
    assert formal_adjoint(formal_adjoint(d2)) == d2


def test_T_conjugation_of_D1_is_block_diagonal(g, params):
    B = conjugate_by_polynomial(g.T, g.Tinv, g.D1)
    assert B.entry(0, 0) == delta_op(params.b)
    assert B.entry(1, 1) == delta_op(0) + 2
    assert B.entry(2, 2) == delta_op(0)
    for i in range(3):
        for j in range(3):
            if i != j:
                assert B.entry(i, j).is_zero()


def test_conjugation_by_identity_and_inverse(g):
    D = random_op(random.Random(9))
    assert conjugate_by_polynomial(I3, I3, D) == D
    there = conjugate_by_polynomial(g.T, g.Tinv, D)
    assert conjugate_by_polynomial(g.Tinv, g.T, there) == D


def test_conjugation_checks_inverse(g):
    with pytest.raises(NotInverse):
        conjugate_by_polynomial(g.T, g.T, DiffOp.identity(3))


def test_weight_conjugation_of_partial(W, params):
    b = params.b
    E = conjugate_by_weight_diag(W.diag_exponents, DiffOp.partial(3))
    assert E.is_polynomial()
    want = DiffOp.partial(3) + DiffOp.mult(MatPoly([[Poly((-2 * b, 2)), 0, 0],
                                                     [0, Poly((0, 2)), 0],
                                                     [0, 0, Poly((0, 2))]]))
    assert E.to_diffop() == want


def test_weight_conjugation_diagonal_cancels(W):
    D = DiffOp([MatPoly([[x, 0, 0], [0, 1, 0], [0, 0, x * x]]), I3])
    assert conjugate_by_weight_diag(W.diag_exponents, D).is_polynomial()


def test_weight_conjugation_off_diagonal_carries_exponential(W, params):
    D = DiffOp.mult(MatPoly.unit(3, 0, 1))
    E = conjugate_by_weight_diag(W.diag_exponents, D)
    assert not E.is_polynomial()
    assert set(E.coeff(0).terms) == {(Fraction(0), -2 * params.b)}
    with pytest.raises(NonPolynomialAdjoint):
        E.to_diffop()


def test_W_adjoint_examples(W, g):
    assert formal_W_adjoint(g.D1, W) == g.D1
    assert formal_W_adjoint(g.D2, W) == g.D2
    alpha = DiffOp.identity(3) * Fraction(5, 3)
    assert formal_W_adjoint(alpha, W) == alpha
    with pytest.raises(NonPolynomialAdjoint):
        formal_W_adjoint(DiffOp([MatPoly.zero(3), MatPoly.unit(3, 0, 1)]), W)


def test_degree_profile():
    from conftest import gens_for, PARAM_SETS

    g = gens_for(PARAM_SETS[0])
    assert degree_profile_ok(g.D1) and degree_profile_ok(g.D2)
    assert not degree_profile_ok(DiffOp([I3 * (x * x), I3]))
    assert degree_profile_ok(DiffOp.zero(3))


def test_exp_diffop_plumbing():
    E = ExpDiffOp([ExpPoly.poly(I3)], 3)
    assert E.is_polynomial() and E.to_diffop() == DiffOp.identity(3)


def test_json_round_trip(g):
    assert DiffOp.from_json(g.D2.to_json()) == g.D2


# -- properties on seeded random operators ------------------------------------

def test_compose_associative_and_action():
    r = random.Random(31)
    for _ in range(6):
        A, B, C = (random_op(r, r.randint(0, 3), r.randint(0, 3)) for _ in range(3))
        assert (A * B) * C == A * (B * C)
        P = random_matpoly(r, 3, 3)
        assert apply_right(P, A * B) == apply_right(apply_right(P, A), B)


def test_adjoint_anti_multiplicative():
    r = random.Random(32)
    for _ in range(8):
        A, B = random_op(r, r.randint(0, 3), 2), random_op(r, r.randint(0, 3), 2)
        assert formal_adjoint(A * B) == formal_adjoint(B) * formal_adjoint(A)
        assert formal_adjoint(formal_adjoint(A)) == A


def test_W_adjoint_involution(W, g):
    r = random.Random(33)
    ops = [g.D1 * g.D2, g.D1 + g.D2 * 3]
    # operators of the form T diag-block T^-1 with polynomial adjoints
    for _ in range(3):
        blocks = DiffOp.from_entries([[delta_op(0) * r.randint(-3, 3), None, None],
                                      [None, DiffOp.scalar_op([r.randint(-3, 3), Poly((1, 2))]), None],
                                      [None, None, DiffOp.scalar_op([1, 0, r.randint(1, 3)])]])
        ops.append(conjugate_by_polynomial(g.Tinv, g.T, blocks))
    for D in ops:
        try:
            Dd = formal_W_adjoint(D, W)
        except NonPolynomialAdjoint:
            continue
        assert formal_W_adjoint(Dd, W) == D
