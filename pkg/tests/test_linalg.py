from fractions import Fraction

import pytest

from mopforge.errors import SingularMatrix
from mopforge.linalg import identity, mat_det, mat_inv, mat_mul, nullspace, rank, rref
from mopforge.scalar import Scalar

beta = Scalar.beta()


def S(rows):
    return [[Scalar(e) if not isinstance(e, Scalar) else e for e in r] for r in rows]


def test_inverse_over_fraction_field():
    A = S([[beta, 1], [1, beta + 2]])
    assert mat_mul(A, mat_inv(A)) == identity(2)
    assert mat_det(A) == beta * beta + beta * 2 - 1


def test_singular():
    with pytest.raises(SingularMatrix):
        mat_inv(S([[1, 2], [2, 4]]))
    with pytest.raises(ZeroDivisionError):
        mat_inv(S([[beta, beta], [1, 1]]))


def test_rref_nullspace_rank():
    A = S([[1, 2, 3], [2, 4, 6], [0, 1, beta]])
    R, piv = rref(A, 3)
    assert piv == [0, 1]
    assert rank(A, 3) == 2
    (v,) = nullspace(A, 3)
    assert all(sum((a * x for a, x in zip(r, v)), Scalar(0)).is_zero() for r in A)
    assert nullspace(S([[1, 0], [0, Fraction(1, 3)]]), 2) == []
