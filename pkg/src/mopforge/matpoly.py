"""Polynomials in ``x`` over :class:`Scalar` and square matrices of them."""
from __future__ import annotations

import random
from fractions import Fraction
from typing import Sequence

from .errors import SizeMismatch
from .scalar import ONE, ZERO, Scalar, _coerce


class Poly:
    """Dense univariate polynomial; ``coeffs[k]`` multiplies ``x**k``."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence = ()):
        cs = [c if isinstance(c, Scalar) else Scalar(c) for c in coeffs]
        while cs and cs[-1].is_zero():
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def _raw(cls, coeffs) -> "Poly":
        # coeffs already Scalars; strip only
        cs = list(coeffs)
        while cs and cs[-1].is_zero():
            cs.pop()
        out = cls.__new__(cls)
        out.coeffs = tuple(cs)
        return out

    @classmethod
    def x(cls) -> "Poly":
        return cls((0, 1))

    @classmethod
    def const(cls, c) -> "Poly":
        return cls((c,))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, k: int) -> Scalar:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else ZERO

    def lead(self) -> Scalar:
        return self.coeffs[-1] if self.coeffs else ZERO

    def __add__(self, other):
        if not isinstance(other, Poly):
            other = Poly.const(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return Poly._raw([a[k] + b[k] for k in range(len(b))] + list(a[len(b):]))

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw([-c for c in self.coeffs])

    def __sub__(self, other):
        if not isinstance(other, Poly):
            other = Poly.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Poly):
            s = _coerce(other)
            if s is NotImplemented:
                return NotImplemented
            if s.is_zero():
                return Poly()
            return Poly._raw([c * s for c in self.coeffs])
        if not self.coeffs or not other.coeffs:
            return Poly()
        out = [ZERO] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coeffs):
                if not b.is_zero():
                    out[i + j] = out[i + j] + a * b
        return Poly._raw(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = Poly.const(1)
        for _ in range(k):
            out = out * self
        return out

    def shift_up(self, k: int = 1) -> "Poly":
        """Multiply by ``x**k``."""
        if not self.coeffs:
            return self
        return Poly._raw([ZERO] * k + list(self.coeffs))

    def derivative(self, times: int = 1) -> "Poly":
        cs = self.coeffs
        for _ in range(times):
            cs = [c * k for k, c in enumerate(cs)][1:]
        return Poly._raw(cs)

    def __call__(self, value):
        acc = ZERO if isinstance(value, Scalar) else 0
        for c in reversed(self.coeffs):
            acc = acc * value + c
        return acc

    def compose(self, inner: "Poly") -> "Poly":
        acc = Poly()
        for c in reversed(self.coeffs):
            acc = acc * inner + Poly((c,))
        return acc

    def eval_mp(self, x, beta_value):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c.eval_mp(beta_value)
        return acc

    def __eq__(self, other):
        if not isinstance(other, Poly):
            if isinstance(other, (int, Fraction, Scalar)):
                other = Poly.const(other)
            else:
                return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"Poly({self})"

    def __str__(self):
        return format_poly(self, "x")

    def to_json(self):
        return [c.to_json() for c in self.coeffs]

    @classmethod
    def from_json(cls, data) -> "Poly":
        return cls([Scalar.from_json(c) for c in data])


def format_poly(p: Poly, var: str = "x") -> str:
    if p.is_zero():
        return "0"
    parts = []
    for k, c in enumerate(p.coeffs):
        if c.is_zero():
            continue
        mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
        cs = str(c)
        if not c.is_rational() and mono:
            cs = f"({cs})"
        if mono and c == ONE:
            parts.append(mono)
        elif mono and c == -ONE:
            parts.append(f"-{mono}")
        else:
            parts.append(f"{cs}*{mono}" if mono else cs)
    return " + ".join(parts).replace("+ -", "- ")


class MatPoly:
    """``N x N`` matrix whose entries are :class:`Poly`."""

    __slots__ = ("rows", "n")

    def __init__(self, rows):
        rows = tuple(
            tuple(e if isinstance(e, Poly) else Poly.const(e) for e in row) for row in rows
        )
        n = len(rows)
        if n == 0 or any(len(r) != n for r in rows):
            raise SizeMismatch("MatPoly needs a non-empty square array")
        self.rows = rows
        self.n = n

    @classmethod
    def zero(cls, n: int) -> "MatPoly":
        z = Poly()
        return cls([[z] * n for _ in range(n)])

    @classmethod
    def identity(cls, n: int) -> "MatPoly":
        return cls([[Poly.const(1 if i == j else 0) for j in range(n)] for i in range(n)])

    @classmethod
    def scalar(cls, n: int, s) -> "MatPoly":
        return cls([[Poly.const(s if i == j else 0) for j in range(n)] for i in range(n)])

    @classmethod
    def unit(cls, n: int, i: int, j: int, entry=1) -> "MatPoly":
        """Matrix with a single nonzero entry at ``(i, j)`` (0-based)."""
        e = entry if isinstance(entry, Poly) else Poly.const(entry)
        return cls([[e if (r, c) == (i, j) else Poly() for c in range(n)] for r in range(n)])

    @classmethod
    def from_coeffs(cls, mats) -> "MatPoly":
        """Build ``sum_k mats[k] * x**k`` from constant matrices of scalars."""
        mats = list(mats)
        n = len(mats[0])
        return cls([[Poly([m[i][j] for m in mats]) for j in range(n)] for i in range(n)])

    @property
    def degree(self) -> int:
        return max(e.degree for row in self.rows for e in row)

    def is_zero(self) -> bool:
        return all(e.is_zero() for row in self.rows for e in row)

    def coeff(self, k: int):
        """Constant matrix multiplying ``x**k`` as nested lists of scalars."""
        return [[e.coeff(k) for e in row] for row in self.rows]

    def lead_matrix(self, k: int | None = None):
        return self.coeff(self.degree if k is None else k)

    def __getitem__(self, ij) -> Poly:
        i, j = ij
        return self.rows[i][j]

    def _check(self, other: "MatPoly"):
        if self.n != other.n:
            raise SizeMismatch(f"size {self.n} vs {other.n}")

    def __add__(self, other):
        if not isinstance(other, MatPoly):
            return NotImplemented
        self._check(other)
        return MatPoly([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __sub__(self, other):
        if not isinstance(other, MatPoly):
            return NotImplemented
        self._check(other)
        return MatPoly([[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __neg__(self):
        return MatPoly([[-a for a in r] for r in self.rows])

    def __mul__(self, other):
        if isinstance(other, MatPoly):
            return matpoly_mul(self, other)
        if isinstance(other, Poly):
            return MatPoly([[a * other for a in r] for r in self.rows])
        s = _coerce(other)
        if s is NotImplemented:
            return NotImplemented
        return MatPoly([[a * s for a in r] for r in self.rows])

    def __rmul__(self, other):
        # scalars and scalar polynomials commute with matrices
        return self.__mul__(other)

    def derivative(self, times: int = 1) -> "MatPoly":
        return MatPoly([[a.derivative(times) for a in r] for r in self.rows])

    def shift_up(self, k: int = 1) -> "MatPoly":
        return MatPoly([[a.shift_up(k) for a in r] for r in self.rows])

    def transpose(self) -> "MatPoly":
        return MatPoly([[self.rows[j][i] for j in range(self.n)] for i in range(self.n)])

    def conj_transpose(self) -> "MatPoly":
        return matpoly_conj_transpose(self)

    def map_entries(self, f) -> "MatPoly":
        return MatPoly([[f(a) for a in r] for r in self.rows])

    def eval_mp(self, x, beta_value):
        import mpmath

        return mpmath.matrix([[e.eval_mp(x, beta_value) for e in r] for r in self.rows])

    def __eq__(self, other):
        if not isinstance(other, MatPoly):
            return NotImplemented
        return self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        return "MatPoly([" + ", ".join("[" + ", ".join(str(e) for e in r) + "]" for r in self.rows) + "])"

    def pretty(self, var: str = "x") -> str:
        cells = [[format_poly(e, var) for e in r] for r in self.rows]
        width = max(len(c) for r in cells for c in r)
        return "\n".join("[ " + "  ".join(c.rjust(width) for c in r) + " ]" for r in cells)

    def to_json(self):
        return [[e.to_json() for e in r] for r in self.rows]

    @classmethod
    def from_json(cls, data) -> "MatPoly":
        return cls([[Poly.from_json(e) for e in r] for r in data])


def matpoly_mul(A: MatPoly, B: MatPoly) -> MatPoly:
    """Exact product of two matrix polynomials of equal size."""
    A._check(B)
    n = A.n
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            acc = Poly()
            for k in range(n):
                a, b = A.rows[i][k], B.rows[k][j]
                if a.coeffs and b.coeffs:
                    acc = acc + a * b
            row.append(acc)
        rows.append(row)
    return MatPoly(rows)


def matpoly_conj_transpose(A: MatPoly) -> MatPoly:
    """Hermitian conjugate; scalars here are real so this is the transpose."""
    return MatPoly([[A.rows[j][i].__class__._raw([c.conjugate() for c in A.rows[j][i].coeffs])
                     for j in range(A.n)] for i in range(A.n)])


def random_matpoly(rng: random.Random, n: int = 3, degree: int = 4, beta_span: int = 1,
                   max_num: int = 5) -> MatPoly:
    """Random matrix polynomial with small Laurent coefficients, for property tests."""

    def rand_scalar():
        terms = {}
        for e in range(-beta_span, beta_span + 1):
            if rng.random() < 0.4:
                terms[e] = Fraction(rng.randint(-max_num, max_num), rng.randint(1, 3))
        return Scalar.from_terms(terms)

    return MatPoly([[Poly([rand_scalar() for _ in range(rng.randint(0, degree) + 1)])
                     for _ in range(n)] for _ in range(n)])
