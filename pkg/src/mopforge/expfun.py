"""Matrix exponential-polynomials ``sum_k P_k(x) exp(alpha_k x**2 + gamma_k x)``.

Functions ``exp(alpha x**2 + gamma x)`` with distinct ``(alpha, gamma)`` are
linearly independent over matrix polynomials, so a canonical term list with
no zero payloads decides equality syntactically.
"""
from __future__ import annotations

from fractions import Fraction

from .errors import SizeMismatch
from .matpoly import MatPoly, Poly
from .scalar import to_fraction

Key = tuple  # (alpha, gamma) as Fractions


def quad_key(alpha, gamma) -> Key:
    return (to_fraction(alpha), to_fraction(gamma))


class ExpPoly:
    __slots__ = ("terms", "n")

    def __init__(self, terms, n: int | None = None):
        items = terms.items() if isinstance(terms, dict) else terms
        acc: dict[Key, MatPoly] = {}
        for key, payload in items:
            key = quad_key(*key)
            if n is None:
                n = payload.n
            elif payload.n != n:
                raise SizeMismatch(f"payload size {payload.n} vs {n}")
            acc[key] = acc[key] + payload if key in acc else payload
        if n is None:
            raise ValueError("size of an empty ExpPoly must be given")
        self.n = n
        self.terms = {k: acc[k] for k in sorted(acc) if not acc[k].is_zero()}

    @classmethod
    def poly(cls, P: MatPoly) -> "ExpPoly":
        return cls({(0, 0): P})

    @classmethod
    def zero(cls, n: int) -> "ExpPoly":
        return cls({}, n)

    def is_zero(self) -> bool:
        return not self.terms

    def is_polynomial(self) -> bool:
        return all(k == (0, 0) for k in self.terms)

    def polynomial_part(self) -> MatPoly:
        return self.terms.get((Fraction(0), Fraction(0)), MatPoly.zero(self.n))

    def __add__(self, other):
        other = _lift(other)
        if other.n != self.n:
            raise SizeMismatch(f"size {self.n} vs {other.n}")
        return ExpPoly(list(self.terms.items()) + list(other.terms.items()), self.n)

    __radd__ = __add__

    def __neg__(self):
        return ExpPoly({k: -v for k, v in self.terms.items()}, self.n)

    def __sub__(self, other):
        return self + (-_lift(other))

    def __rsub__(self, other):
        return _lift(other) - self

    def __mul__(self, other):
        if isinstance(other, (MatPoly, ExpPoly)):
            return expfun_mul(self, _lift(other))
        return ExpPoly({k: v * other for k, v in self.terms.items()}, self.n)

    def __rmul__(self, other):
        if isinstance(other, MatPoly):
            return expfun_mul(_lift(other), self)
        return ExpPoly({k: other * v for k, v in self.terms.items()}, self.n)

    def derivative(self) -> "ExpPoly":
        return expfun_derivative(self)

    def conj_transpose(self) -> "ExpPoly":
        return ExpPoly({k: v.conj_transpose() for k, v in self.terms.items()}, self.n)

    def eval_mp(self, x, beta_value):
        import mpmath

        out = mpmath.zeros(self.n, self.n)
        for (alpha, gamma), payload in self.terms.items():
            e = mpmath.exp(mpmath.mpf(alpha.numerator) / alpha.denominator * x * x
                           + mpmath.mpf(gamma.numerator) / gamma.denominator * x)
            out += payload.eval_mp(x, beta_value) * e
        return out

    def __eq__(self, other):
        if not isinstance(other, (ExpPoly, MatPoly)):
            return NotImplemented
        return (self - other).is_zero()

    __hash__ = None

    def __repr__(self):
        if not self.terms:
            return "ExpPoly(0)"
        return "ExpPoly(" + " + ".join(f"exp({a}x^2+{g}x)*{p!r}" for (a, g), p in self.terms.items()) + ")"

    def to_json(self):
        return [
            {"alpha": str(a), "gamma": str(g), "payload": p.to_json()}
            for (a, g), p in self.terms.items()
        ]


def _lift(f) -> ExpPoly:
    if isinstance(f, ExpPoly):
        return f
    if isinstance(f, MatPoly):
        return ExpPoly.poly(f)
    raise TypeError(f"cannot use {type(f).__name__} as an ExpPoly")


def expfun_mul(f: ExpPoly, g: ExpPoly) -> ExpPoly:
    """Product: exponents add and payloads multiply."""
    if f.n != g.n:
        raise SizeMismatch(f"size {f.n} vs {g.n}")
    out = []
    for (a1, g1), p in f.terms.items():
        for (a2, g2), q in g.terms.items():
            out.append(((a1 + a2, g1 + g2), p * q))
    return ExpPoly(out, f.n)


def expfun_derivative(f: ExpPoly) -> ExpPoly:
    """``d/dx [P e^q] = (P' + P q') e^q``."""
    out = []
    for (alpha, gamma), p in f.terms.items():
        qprime = Poly((gamma, 2 * alpha))
        out.append(((alpha, gamma), p.derivative() + p * qprime))
    return ExpPoly(out, f.n)


def expfun_is_zero(f: ExpPoly) -> bool:
    return f.is_zero()


def expfun_decays_at_infinity(f: ExpPoly) -> bool:
    """Every surviving term carries a Gaussian envelope (``alpha < 0``)."""
    return all(alpha < 0 for alpha, _ in f.terms)


def diagonal_exp(exponents, n: int | None = None) -> ExpPoly:
    """``diag(exp(q_1), ..., exp(q_n))`` for quadratics ``q_i = (alpha_i, gamma_i)``."""
    n = n or len(exponents)
    return ExpPoly([(q, MatPoly.unit(n, i, i)) for i, q in enumerate(exponents)], n)
