from fractions import Fraction

import numpy as np
import pytest

from mopforge.diffop import DiffOp, apply_right
from mopforge.errors import DegreeProfileError, NotAnEigenfunction
from mopforge.linalg import mat_det, mat_inv, mat_mul
from mopforge.matpoly import MatPoly, Poly
from mopforge.orthopoly import (
    PRINTED_ZERO_MISMATCH,
    const,
    conjugated_eigenvalue,
    eigenvalue_extract,
    eigenvalue_formula,
    eval_symbolic,
    explicit_Qn,
    falling_factorial,
    g_n,
    hermite_monic,
    leading_An,
    mat_equal,
    monic_gram_schmidt,
    monic_sequence,
    paper_recurrence,
    recurrence_comparison,
    recurrence_extract,
)
from mopforge.scalar import Scalar, numeric_eval
from mopforge.weight import inner_product_exact

x = Poly.x()
beta = Scalar.beta()
I3 = MatPoly.identity(3)


def S(M):
    return [[Scalar(e) if not isinstance(e, Scalar) else e for e in r] for r in M]


def test_hermite_examples():
    assert hermite_monic(1) == x
    assert hermite_monic(2) == Poly((Fraction(-1, 2), 0, 1))
    assert hermite_monic(2, 1) == Poly((Fraction(1, 2), -2, 1))
    assert hermite_monic(0, 5) == Poly.const(1)


def test_hermite_shifted_three_term_relation():
    b = Fraction(2, 3)
    for n in range(1, 8):
        lhs = hermite_monic(n, b) * x
        rhs = hermite_monic(n + 1, b) + hermite_monic(n, b) * b + hermite_monic(n - 1, b) * Fraction(n, 2)
        assert lhs == rhs


def test_Q0_is_identity(params):
    assert explicit_Qn(0, params) == I3


def test_Q1_at_111(p111):
    half = Fraction(1, 2)
    want = MatPoly([
        [Poly((-1, 1)), Poly((-half, 1)), 0],
        [Poly.const(beta * -half), x * ((beta + 3) * half), Poly.const(-half)],
        [0, Poly.const(-half), x],
    ])
    assert explicit_Qn(1, p111) == want
    assert explicit_Qn(1, p111).lead_matrix(1) == S([[1, 1, 0], [0, (beta + 3) * half, 0], [0, 0, 1]])


def test_leading_An(params):
    assert mat_equal(leading_An(0, params), S([[1, 0, 0], [0, 1, 0], [0, 0, 1]]))
    for n in range(6):
        assert explicit_Qn(n, params).lead_matrix(n) == leading_An(n, params)


def test_leading_An_determinant_positive(p111):
    for n in range(21):
        assert numeric_eval(mat_det(leading_An(n, p111)), 1) > 0


def test_gram_schmidt_matches_explicit(W111, p111):
    P = monic_gram_schmidt(8, W111)
    assert P[0] == I3
    for n in range(9):
        assert P[n] == const(mat_inv(leading_An(n, p111))) * explicit_Qn(n, p111)
    H = inner_product_exact(P[2], P[1], W111)
    assert all(e.is_zero() for r in H for e in r)


def test_gram_schmidt_order_independent(W):
    a = monic_gram_schmidt(5, W, order="ascending")
    b = monic_gram_schmidt(5, W, order="descending")
    assert a == b == monic_sequence(W, 5)


def test_monic_sequence_orthogonality(W):
    P = monic_sequence(W, 8)
    for n in range(9):
        assert P[n].lead_matrix(n) == I3.lead_matrix(0)
        for m in range(n):
            H = inner_product_exact(P[n], P[m], W)
            assert all(e.is_zero() for r in H for e in r)


# -- recurrence ---------------------------------------------------------------

def _seq(params, n):
    return [explicit_Qn(k, params) for k in range(n + 2)]


def test_recurrence_B12_example(p111):
    rec = recurrence_extract(1, _seq(p111, 1))
    assert rec.B[0][1] == Scalar(1) / (beta + 3)


def test_recurrence_B22_is_not_zero(params):
    """The printed display shows 0; the unique recurrence says ``a^2 b beta n / g_n``."""
    a, b, _ = params.as_tuple()
    seq = _seq(params, 6)
    assert recurrence_extract(0, seq).B[1][1].is_zero()
    for n in range(1, 7):
        assert recurrence_extract(n, seq).B[1][1] == beta * (a * a * b * n) / g_n(n, params)
    assert ("B", 1, 1) in PRINTED_ZERO_MISMATCH


def test_C0_is_zero(params):
    rec = recurrence_extract(0, _seq(params, 0))
    assert all(e.is_zero() for r in rec.C for e in r)


def test_recurrence_reconstructs_xQn(params):
    seq = _seq(params, 8)
    for n in range(9):
        rec = recurrence_extract(n, seq)
        rhs = const(rec.A) * seq[n + 1] + const(rec.B) * seq[n]
        if n:
            rhs = rhs + const(rec.C) * seq[n - 1]
        assert seq[n].shift_up(1) == rhs
        assert numeric_eval(mat_det(rec.A), params.b) != 0


def test_unambiguous_printed_entries_match(params):
    seq = _seq(params, 8)
    for n in range(9):
        rows = recurrence_comparison(n, params, seq)
        assert not [r for r in rows if r["verdict"] == "mismatch"], n


def test_flagged_entries_resolved(params):
    seq = _seq(params, 8)
    a, _, c = params.as_tuple()
    for n in range(9):
        rec = recurrence_extract(n, seq)
        g = g_n(n, params)
        assert rec.C[0][0] == (g + beta * (a * a)) * n / (g * 2)
        assert rec.C[2][2] == (g + c * c) * n / (g * 2)
        lit = paper_recurrence(n, params)["literal_flagged"]
        assert lit[(0, 0)] == rec.C[0][0]
        assert (n == 0) == (lit[(2, 2)] == rec.C[2][2])


# -- eigenvalues --------------------------------------------------------------

def test_eigen_extract_examples(W111, g111):
    P = monic_sequence(W111, 3)
    assert mat_equal(eigenvalue_extract(g111.D1, 1, P), S([[-2, -2, 0], [0, 0, 0], [0, 0, -2]]))
    assert mat_equal(eigenvalue_extract(g111.D2, 0, P), S([[6, 0, -2], [0, 6, 0], [0, 0, 0]]))
    for n in range(4):
        assert mat_equal(eigenvalue_extract(DiffOp.identity(3), n, P), S(np.eye(3, dtype=int).tolist()))


def test_eigen_formula_symbolic(params, g):
    a, b, c = params.as_tuple()
    nn = Poly.x()
    L1 = eigenvalue_formula(g.D1)
    assert L1 == MatPoly([[nn * -2, nn * (-2 * a * b), 0], [0, nn * -2 + 2, 0], [0, 0, nn * -2]])
    mu = 2 * (c * c + 2) / (c * c)
    L2 = eigenvalue_formula(g.D2)
    assert L2 == MatPoly([[mu, 0, (nn + 1) * (-2 * a / c)], [0, mu, 0], [0, 0, nn * -2]])
    assert falling_factorial(3, 2) == 6 and falling_factorial(5, 0) == 1


def test_eigen_formula_matches_extraction(W, g):
    P = monic_sequence(W, 10)
    for D in (g.D1, g.D2):
        for n in range(11):
            assert mat_equal(eigenvalue_formula(D, n), eigenvalue_extract(D, n, P))
            assert mat_equal(eval_symbolic(eigenvalue_formula(D), n), eigenvalue_formula(D, n))


def test_explicit_Qn_eigen_identity(params, g):
    for n in range(6):
        Q = explicit_Qn(n, params)
        for D in (g.D1, g.D2):
            lam = conjugated_eigenvalue(eigenvalue_formula(D, n), n, params)
            assert apply_right(Q, D) == const(lam) * Q


def test_representation_property(W, g):
    P = monic_sequence(W, 6)
    for D in (g.D1, g.D2):
        for E in (g.D1, g.D2):
            for n in range(7):
                lhs = eigenvalue_extract(D * E, n, P)
                rhs = mat_mul(eigenvalue_extract(D, n, P), eigenvalue_extract(E, n, P))
                assert mat_equal(lhs, rhs)


def test_non_member_is_rejected(W111):
    P = monic_sequence(W111, 3)
    with pytest.raises(NotAnEigenfunction):
        eigenvalue_extract(DiffOp.partial(3), 2, P)
    with pytest.raises(DegreeProfileError):
        eigenvalue_formula(DiffOp([I3 * (x * x)]))
