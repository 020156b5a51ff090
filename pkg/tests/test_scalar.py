import math
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mopforge.errors import NonMonomialDivision
from mopforge.scalar import ONE, ZERO, Params, Scalar, numeric_eval, numeric_eval_mp, scalar_arith

from conftest import nonzero_monomials, scalars

beta = Scalar.beta()


# -- examples ------------------------------------------------------------------

def test_difference_of_squares():
    assert scalar_arith(beta + 1, beta - 1, "mul") == beta * beta - 1


def test_cancellation():
    x = Scalar.from_terms({0: Fraction(3, 2), 1: Fraction(1, 2)})
    y = Scalar.from_terms({0: Fraction(1, 2), 1: Fraction(-1, 2)})
    assert scalar_arith(x, y, "add") == Scalar(2)


def test_monomial_quotient():
    assert scalar_arith(Scalar.beta(2) * 4, beta * 2, "div") == beta * 2


def test_division_errors():
    with pytest.raises(ZeroDivisionError):
        scalar_arith(ONE, ZERO, "div")
    with pytest.raises(NonMonomialDivision):
        scalar_arith(ONE, beta + 1, "div")
    with pytest.raises(ValueError):
        scalar_arith(ONE, ONE, "pow")


def test_negative_powers_are_laurent():
    inv = Scalar.beta(-2)
    assert inv.is_laurent() and inv.is_monomial()
    assert inv * Scalar.beta(2) == ONE
    assert inv.laurent_terms() == {-2: Fraction(1)}


def test_full_field_division_is_reduced():
    q = (beta * beta - 1) / (beta + 1)
    assert q == beta - 1
    assert not (ONE / (beta + 3)).is_laurent()


def test_numeric_eval_examples():
    assert numeric_eval(beta, 1) == pytest.approx(math.exp(-1), rel=1e-15)
    assert numeric_eval(ZERO, Fraction(7, 3)) == 0.0
    assert numeric_eval(Scalar(Fraction(5, 2)), 1) == 2.5


def test_numeric_eval_rejects_low_precision():
    with pytest.raises(ValueError):
        numeric_eval(beta, 1, precision=32)


def test_numeric_eval_precision_bound():
    x = Scalar.from_terms({-1: 3, 2: Fraction(-1, 7)})
    hi = numeric_eval_mp(x, Fraction(1, 3), 400)
    for prec in (64, 128, 256):
        lo = numeric_eval_mp(x, Fraction(1, 3), prec)
        assert abs(lo - hi) <= abs(hi) * mpmath.mpf(2) ** (1 - prec)


def test_str_forms():
    assert str(Scalar.beta(-1) + Fraction(1, 2)) == "β^-1 + 1/2"
    assert str(ONE - beta * 3) == "1 - 3*β"
    assert str(ZERO) == "0"


def test_json_round_trip():
    for x in (ZERO, Scalar.from_terms({-2: 1, 3: Fraction(-5, 4)}), beta / (beta + 3)):
        assert Scalar.from_json(x.to_json()) == x
    assert Scalar.beta(-1).to_json() == [{"beta_exp": -1, "num": "1", "den": "1"}]


def test_params_rejects_zero():
    for bad in ((0, 1, 1), (1, 0, 1), (1, 1, 0)):
        with pytest.raises(ValueError):
            Params(*bad)
    assert Params.parse("2, 1/2, 3") == Params(2, Fraction(1, 2), 3)
    with pytest.raises(ValueError):
        Params.parse("1,2")


# -- properties ----------------------------------------------------------------

@settings(max_examples=1000)
@given(scalars(), scalars(), scalars())
def test_ring_axioms(x, y, z):
    assert (x + y) + z == x + (y + z)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x + y == y + x and x * y == y * x
    assert x + ZERO == x and x * ONE == x
    assert x - x == ZERO


@settings(max_examples=300)
@given(scalars(), scalars(), st.fractions(min_value=Fraction(1, 4), max_value=2, max_denominator=8))
def test_numeric_eval_is_homomorphism(x, y, b):
    with mpmath.workprec(200):
        ex, ey = numeric_eval_mp(x, b, 200), numeric_eval_mp(y, b, 200)
        tol = mpmath.mpf(2) ** -150 * (1 + abs(ex) + abs(ey)) ** 2
        assert abs(numeric_eval_mp(x * y, b, 200) - ex * ey) <= tol
        assert abs(numeric_eval_mp(x + y, b, 200) - (ex + ey)) <= tol


@settings(max_examples=200)
@given(scalars(), nonzero_monomials())
def test_monomial_division_inverts_multiplication(x, m):
    assert scalar_arith(scalar_arith(x, m, "mul"), m, "div") == x


@settings(max_examples=200)
@given(scalars())
def test_hash_consistent_with_equality(x):
    y = (x + beta) - beta
    assert x == y and hash(x) == hash(y)
