import random
from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from mopforge.expfun import (
    ExpPoly,
    diagonal_exp,
    expfun_decays_at_infinity,
    expfun_derivative,
    expfun_is_zero,
    expfun_mul,
)
from mopforge.matpoly import MatPoly, Poly, random_matpoly
from mopforge.weight import factored_weight, weight_closed_form

from conftest import matpolys

I = MatPoly.identity(3)
x = Poly.x()


def e(alpha, gamma, P=I):
    return ExpPoly({(alpha, gamma): P})


def test_exponents_add():
    b = Fraction(3, 2)
    assert expfun_mul(e(-1, 0), e(0, 2 * b)) == e(-1, 2 * b)


def test_weight_factorization_entrywise(W, params):
    assert expfun_is_zero(W.W - factored_weight(W))
    assert W.W == weight_closed_form(params)


def test_times_zero():
    f = e(-1, 1, random_matpoly(random.Random(1), 3, 2))
    assert expfun_mul(f, ExpPoly.zero(3)).is_zero()


def test_derivative_examples():
    assert expfun_derivative(e(-1, 0)) == e(-1, 0, I * Poly((0, -2)))
    one = MatPoly.scalar(1, 1)
    f = ExpPoly({(-1, 2): one * x})
    want = ExpPoly({(-1, 2): one * (Poly.const(1) + x * Poly((2, -2)))})
    assert expfun_derivative(f) == want
    assert expfun_derivative(ExpPoly.poly(MatPoly.scalar(3, 7))).is_zero()


def test_zero_tests(params):
    assert not expfun_is_zero(e(-1, 0) - e(-1, 2 * params.b))
    assert expfun_is_zero(ExpPoly.zero(3))


def test_decay(W, g):
    assert expfun_decays_at_infinity(g.D1.coeff(2) * W.W)
    assert not expfun_decays_at_infinity(ExpPoly.poly(I * x))
    assert expfun_decays_at_infinity(ExpPoly.zero(3))


def test_diagonal_exp():
    D = diagonal_exp([(-1, 2), (-1, 0)])
    assert set(D.terms) == {(Fraction(-1), Fraction(0)), (Fraction(-1), Fraction(2))}


exps = st.tuples(st.integers(-2, 0), st.integers(-2, 2))


@st.composite
def exppolys(draw):
    k = draw(st.integers(0, 2))
    return ExpPoly([(draw(exps), draw(matpolys(max_degree=1))) for _ in range(k)], 3)


@settings(max_examples=40)
@given(exppolys(), exppolys(), exppolys())
def test_ring_axioms(f, g, h):
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h
    assert expfun_is_zero(f - f)


@settings(max_examples=40)
@given(exppolys(), exppolys())
def test_leibniz(f, g):
    assert (f * g).derivative() == f.derivative() * g + f * g.derivative()
