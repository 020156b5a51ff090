"""Exact scalars: rational functions in a formal symbol ``beta``.

``beta`` stands for ``exp(-b**2)``.  For rational ``b != 0`` that number is
transcendental, so no algebraic relation between powers of ``beta`` is ever
used and equality of scalars is decided syntactically.

Most scalars met in practice are Laurent polynomials in ``beta`` (negative
powers come from moments of ``exp(-x**2 + 2*b*x)``).  Gram matrices and
leading coefficients of the monic polynomials also need genuine quotients
such as ``1/(beta + 3)``, so the class implements the full fraction field
``Q(beta)``.  Storage is a pair of ``flint.fmpq_poly`` with a monic
denominator coprime to the numerator.
"""
from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

import flint
import mpmath

from .errors import NonMonomialDivision

_ONE_POLY = flint.fmpq_poly([1])
_ZERO_POLY = flint.fmpq_poly([])


def to_fraction(q) -> Fraction:
    if isinstance(q, Fraction):
        return q
    if isinstance(q, int):
        return Fraction(q)
    if isinstance(q, flint.fmpq):
        return Fraction(int(q.p), int(q.q))
    if isinstance(q, Rational):
        return Fraction(q.numerator, q.denominator)
    if isinstance(q, str):
        return Fraction(q)
    raise TypeError(f"cannot convert {q!r} to an exact rational")


def to_fmpq(q) -> flint.fmpq:
    if isinstance(q, flint.fmpq):
        return q
    f = to_fraction(q)
    return flint.fmpq(f.numerator, f.denominator)


def default_precision() -> int:
    """Bits of working precision for numeric evaluation (env ``MOPFORGE_PRECISION``)."""
    return int(os.environ.get("MOPFORGE_PRECISION", "256"))


class Scalar:
    """Element of ``Q(beta)`` kept in lowest terms with a monic denominator."""

    __slots__ = ("num", "den", "_den_one")

    def __init__(self, value=0, _den=None):
        if isinstance(value, flint.fmpq_poly):
            num = value
        elif isinstance(value, Scalar):
            num, _den = value.num, value.den
        else:
            num = flint.fmpq_poly([to_fmpq(value)])
        if _den is None or _den == _ONE_POLY:
            self.num = num
            self.den = _ONE_POLY
            self._den_one = True
        else:
            self.num, self.den = _reduce(num, _den)
            self._den_one = self.den == _ONE_POLY

    @classmethod
    def beta(cls, power: int = 1) -> "Scalar":
        if power >= 0:
            return cls(flint.fmpq_poly([0] * power + [1]))
        return cls(_ONE_POLY, flint.fmpq_poly([0] * (-power) + [1]))

    @classmethod
    def from_terms(cls, terms) -> "Scalar":
        """Build a Laurent polynomial from ``{beta_exponent: rational}``."""
        terms = {int(k): to_fmpq(v) for k, v in dict(terms).items() if to_fraction(v) != 0}
        if not terms:
            return cls(0)
        low = min(min(terms), 0)
        coeffs = [flint.fmpq(0)] * (max(terms) - low + 1)
        for k, v in terms.items():
            coeffs[k - low] = v
        num = flint.fmpq_poly(coeffs)
        if low == 0:
            return cls(num)
        return cls(num, flint.fmpq_poly([0] * (-low) + [1]))

    # -- predicates -------------------------------------------------------
    def is_zero(self) -> bool:
        return self.num.degree() < 0

    def __bool__(self):
        return not self.is_zero()

    def is_rational(self) -> bool:
        return self._den_one and self.num.degree() <= 0

    def is_laurent(self) -> bool:
        """True when the denominator is a power of ``beta``."""
        d = self.den.degree()
        return self._den_one or self.den == flint.fmpq_poly([0] * d + [1])

    def is_monomial(self) -> bool:
        if not self.is_laurent() or self.is_zero():
            return False
        return sum(1 for c in self.num.coeffs() if c != 0) == 1

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not a rational constant")
        return to_fraction(self.num[0])

    def laurent_terms(self) -> dict[int, Fraction]:
        if not self.is_laurent():
            raise ValueError(f"{self} is not a Laurent polynomial in beta")
        shift = self.den.degree()
        return {
            k - shift: to_fraction(c)
            for k, c in enumerate(self.num.coeffs())
            if c != 0
        }

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if self._den_one and other._den_one:
            return Scalar(self.num + other.num)
        if self.den == other.den:
            return Scalar(self.num + other.num, self.den)
        return Scalar(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        out = Scalar.__new__(Scalar)
        out.num, out.den, out._den_one = -self.num, self.den, self._den_one
        return out

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if self._den_one and other._den_one:
            return Scalar(self.num * other.num)
        return Scalar(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if other.is_zero():
            raise ZeroDivisionError("division by the zero scalar")
        return Scalar(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return _coerce(other) / self

    def __pow__(self, k: int):
        if k < 0:
            return Scalar(1) / self ** (-k)
        if self._den_one:
            return Scalar(self.num ** k)
        return Scalar(self.num ** k, self.den ** k)

    def conjugate(self) -> "Scalar":
        # rationals and powers of a real exponential: conjugation is trivial
        return self

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return False
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((tuple(str(c) for c in self.num.coeffs()),
                     tuple(str(c) for c in self.den.coeffs())))

    # -- evaluation -------------------------------------------------------
    def subs_beta(self, value) -> Fraction:
        """Specialize ``beta`` to an exact rational."""
        v = to_fmpq(value)
        d = self.den(v)
        if d == 0:
            raise ZeroDivisionError(f"denominator of {self} vanishes at beta={value}")
        return to_fraction(self.num(v) / d)

    def eval_mp(self, beta_value):
        """Evaluate with ``beta`` replaced by an mpmath number (current mp precision)."""
        return _horner(self.num, beta_value) / _horner(self.den, beta_value)

    def __repr__(self):
        if self._den_one:
            return f"Scalar({_fmt_poly(self.num)})"
        return f"Scalar(({_fmt_poly(self.num)})/({_fmt_poly(self.den)}))"

    def __str__(self):
        if self.is_laurent():
            return _fmt_terms(self.laurent_terms())
        return f"({_fmt_poly(self.num)})/({_fmt_poly(self.den)})"

    # -- serialization ----------------------------------------------------
    def to_json(self):
        if self.is_laurent():
            return _terms_json(self.laurent_terms())
        return {
            "numerator": _terms_json({k: to_fraction(c) for k, c in enumerate(self.num.coeffs()) if c != 0}),
            "denominator": _terms_json({k: to_fraction(c) for k, c in enumerate(self.den.coeffs()) if c != 0}),
        }

    @classmethod
    def from_json(cls, data) -> "Scalar":
        if isinstance(data, dict):
            return cls.from_json(data["numerator"]) / cls.from_json(data["denominator"])
        return cls.from_terms({t["beta_exp"]: Fraction(int(t["num"]), int(t["den"])) for t in data})


ZERO = Scalar(0)
ONE = Scalar(1)


def _reduce(num, den):
    if den == 0:
        raise ZeroDivisionError("zero denominator")
    if num.degree() < 0:
        return _ZERO_POLY, _ONE_POLY
    g = num.gcd(den)
    if g.degree() > 0:
        num = num // g
        den = den // g
    lead = den[den.degree()]
    if lead != 1:
        num = num / lead
        den = den / lead
    return num, den


def _coerce(x):
    if isinstance(x, Scalar):
        return x
    if isinstance(x, (int, Fraction, flint.fmpq)):
        return Scalar(x)
    return NotImplemented


def _horner(p, v):
    acc = mpmath.mpf(0)
    for c in reversed(p.coeffs()):
        acc = acc * v + mpmath.mpf(int(c.p)) / int(c.q)
    return acc


def _fmt_poly(p) -> str:
    if p.degree() < 0:
        return "0"
    parts = []
    for k, c in enumerate(p.coeffs()):
        if c == 0:
            continue
        if k == 0:
            parts.append(str(c))
        elif c == 1:
            parts.append("β" if k == 1 else f"β^{k}")
        else:
            parts.append(f"{c}*β" if k == 1 else f"{c}*β^{k}")
    return " + ".join(parts)


def _fmt_terms(terms: dict) -> str:
    if not terms:
        return "0"
    parts = []
    for k, c in sorted(terms.items()):
        if k == 0:
            parts.append(str(c))
            continue
        mono = "β" if k == 1 else f"β^{k}"
        parts.append(mono if c == 1 else f"-{mono}" if c == -1 else f"{c}*{mono}")
    out = parts[0]
    for p in parts[1:]:
        out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
    return out


def _terms_json(terms):
    return [
        {"beta_exp": k, "num": str(v.numerator), "den": str(v.denominator)}
        for k, v in sorted(terms.items())
    ]


def scalar_arith(x: Scalar, y: Scalar, op: str) -> Scalar:
    """Exact add/mul, and division restricted to monomial divisors ``r*beta**k``."""
    if op == "add":
        return x + y
    if op == "mul":
        return x * y
    if op == "div":
        if y.is_zero():
            raise ZeroDivisionError("division by the zero scalar")
        if not y.is_monomial():
            raise NonMonomialDivision(f"divisor {y} is not a monomial in beta")
        return x / y
    raise ValueError(f"unknown scalar operation {op!r}")


def numeric_eval(x: Scalar, b, precision: int | None = None) -> float:
    """Substitute ``beta = exp(-b**2)`` at ``precision`` bits and round to float."""
    return float(numeric_eval_mp(x, b, precision))


def numeric_eval_mp(x: Scalar, b, precision: int | None = None):
    precision = precision or default_precision()
    if precision < 53:
        raise ValueError("precision must be at least 53 bits")
    b = to_fraction(b)
    with mpmath.workprec(precision + 16):
        beta = mpmath.exp(-(mpmath.mpf(b.numerator) / b.denominator) ** 2)
        return x.eval_mp(beta)


@dataclass(frozen=True)
class Params:
    """Parameters ``a, b, c`` of the weight; all nonzero rationals."""

    a: Fraction
    b: Fraction
    c: Fraction

    def __post_init__(self):
        for name in ("a", "b", "c"):
            value = to_fraction(getattr(self, name))
            if value == 0:
                raise ValueError(f"parameter {name} must be nonzero")
            object.__setattr__(self, name, value)

    @classmethod
    def parse(cls, text: str) -> "Params":
        """Parse ``"a,b,c"`` with each entry an integer or ``p/q``."""
        parts = [p.strip() for p in text.split(",")]
        if len(parts) != 3:
            raise ValueError(f"expected three comma separated rationals, got {text!r}")
        return cls(*(Fraction(p) for p in parts))

    def as_tuple(self):
        return (self.a, self.b, self.c)

    def __str__(self):
        return ",".join(str(v) for v in self.as_tuple())
