"""Right-acting matrix differential operators ``D = sum_j d^j F_j(x)``.

``P . D = sum_j P^(j)(x) F_j(x)``.  The product ``D1 * D2`` lets the left
factor act first, ``P . (D1 * D2) = (P . D1) . D2``, which is the order in
which the eigenvalue map ``D -> Lambda_n(D)`` is multiplicative.  Every
operation returns the normal-ordered form, so ``==`` is syntactic.
"""
from __future__ import annotations

from math import comb
from typing import Sequence

from .errors import NonPolynomialAdjoint, NotInverse, SizeMismatch
from .expfun import ExpPoly, quad_key
from .matpoly import MatPoly, Poly
from .scalar import _coerce


def _trim(coeffs, is_zero):
    cs = list(coeffs)
    while cs and is_zero(cs[-1]):
        cs.pop()
    return tuple(cs)


class DiffOp:
    __slots__ = ("coeffs", "n")

    def __init__(self, coeffs: Sequence[MatPoly], n: int | None = None):
        coeffs = list(coeffs)
        if n is None:
            if not coeffs:
                raise ValueError("size of the zero operator must be given")
            n = coeffs[0].n
        for c in coeffs:
            if c.n != n:
                raise SizeMismatch(f"coefficient size {c.n} vs {n}")
        self.n = n
        self.coeffs = _trim(coeffs, MatPoly.is_zero)

    # -- constructors -----------------------------------------------------
    @classmethod
    def zero(cls, n: int) -> "DiffOp":
        return cls([], n)

    @classmethod
    def identity(cls, n: int) -> "DiffOp":
        return cls([MatPoly.identity(n)])

    @classmethod
    def mult(cls, F: MatPoly) -> "DiffOp":
        """Right multiplication by ``F`` (an order-0 operator)."""
        return cls([F])

    @classmethod
    def partial(cls, n: int, power: int = 1) -> "DiffOp":
        return cls([MatPoly.zero(n)] * power + [MatPoly.identity(n)])

    @classmethod
    def scalar_op(cls, coeffs: Sequence) -> "DiffOp":
        """1x1 operator from scalar polynomial coefficients ``f_0, f_1, ...``."""
        return cls([MatPoly([[c if isinstance(c, Poly) else Poly.const(c)]]) for c in coeffs], 1)

    @classmethod
    def from_entries(cls, grid) -> "DiffOp":
        """Assemble an ``N x N`` operator from a grid of 1x1 operators (``None`` = 0)."""
        n = len(grid)
        order = max((len(e.coeffs) for row in grid for e in row if e is not None), default=0)
        coeffs = []
        for j in range(order):
            rows = []
            for row in grid:
                rows.append([
                    e.coeffs[j][0, 0] if e is not None and j < len(e.coeffs) else Poly()
                    for e in row
                ])
            coeffs.append(MatPoly(rows))
        return cls(coeffs, n)

    # -- inspection -------------------------------------------------------
    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def coeff(self, j: int) -> MatPoly:
        return self.coeffs[j] if j < len(self.coeffs) else MatPoly.zero(self.n)

    def is_zero(self) -> bool:
        return not self.coeffs

    def entry(self, i: int, j: int) -> "DiffOp":
        return DiffOp([MatPoly([[F[i, j]]]) for F in self.coeffs], 1)

    def leading_coefficient(self) -> MatPoly:
        return self.coeffs[-1] if self.coeffs else MatPoly.zero(self.n)

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        m = max(len(self.coeffs), len(other.coeffs))
        return DiffOp([self.coeff(j) + other.coeff(j) for j in range(m)], self.n)

    __radd__ = __add__

    def __neg__(self):
        return DiffOp([-F for F in self.coeffs], self.n)

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, DiffOp):
            return compose(self, other)
        if isinstance(other, ExpDiffOp):
            return compose_exp(self, other)
        s = _coerce(other)
        if s is NotImplemented:
            return NotImplemented
        return DiffOp([F * s for F in self.coeffs], self.n)

    def __rmul__(self, other):
        s = _coerce(other)
        if s is NotImplemented:
            return NotImplemented
        return DiffOp([F * s for F in self.coeffs], self.n)

    def __pow__(self, k: int):
        out = DiffOp.identity(self.n)
        for _ in range(k):
            out = out * self
        return out

    def _lift(self, other):
        if isinstance(other, DiffOp):
            if other.n != self.n:
                raise SizeMismatch(f"size {self.n} vs {other.n}")
            return other
        s = _coerce(other)
        if s is NotImplemented:
            return NotImplemented
        return DiffOp([MatPoly.scalar(self.n, s)], self.n)

    def __eq__(self, other):
        if not isinstance(other, DiffOp):
            return NotImplemented
        return self.n == other.n and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def adjoint(self) -> "DiffOp":
        return formal_adjoint(self)

    def apply(self, P: MatPoly) -> MatPoly:
        return apply_right(P, self)

    def __repr__(self):
        return f"DiffOp(order={self.order}, n={self.n})"

    def pretty(self) -> str:
        if self.is_zero():
            return "0"
        out = []
        for j, F in enumerate(self.coeffs):
            if F.is_zero():
                continue
            head = "1" if j == 0 else ("∂" if j == 1 else f"∂^{j}")
            out.append(f"{head} ·\n{F.pretty()}")
        return "\n+ ".join(out)

    def to_json(self):
        return {"order": self.order, "coeffs": [F.to_json() for F in self.coeffs]}

    @classmethod
    def from_json(cls, data, n: int = 3) -> "DiffOp":
        coeffs = [MatPoly.from_json(F) for F in data["coeffs"]]
        return cls(coeffs, coeffs[0].n if coeffs else n)


def apply_right(P: MatPoly, D: DiffOp) -> MatPoly:
    """``P . D = sum_j P^(j) F_j``."""
    if P.n != D.n:
        raise SizeMismatch(f"size {P.n} vs {D.n}")
    out = MatPoly.zero(D.n)
    deriv = P
    for j, F in enumerate(D.coeffs):
        if j:
            deriv = deriv.derivative()
        if deriv.is_zero():
            break
        if not F.is_zero():
            out = out + deriv * F
    return out


def compose(D1: DiffOp, D2: DiffOp) -> DiffOp:
    """Normal-ordered ``D1 * D2`` (``D1`` acts first).

    ``(d^i F)(d^j G) = sum_k C(j, k) d^(i+k) F^(j-k) G``.
    """
    if D1.n != D2.n:
        raise SizeMismatch(f"size {D1.n} vs {D2.n}")
    n = D1.n
    if D1.is_zero() or D2.is_zero():
        return DiffOp.zero(n)
    m2 = D2.order
    # derivs[i][r] = r-th derivative of F_i
    derivs = []
    for F in D1.coeffs:
        ds = [F]
        for _ in range(m2):
            ds.append(ds[-1].derivative())
        derivs.append(ds)
    out = [MatPoly.zero(n) for _ in range(D1.order + m2 + 1)]
    for i in range(len(D1.coeffs)):
        for j, G in enumerate(D2.coeffs):
            if G.is_zero():
                continue
            for k in range(j + 1):
                Fd = derivs[i][j - k]
                if Fd.is_zero():
                    continue
                term = Fd * G
                if comb(j, k) != 1:
                    term = term * comb(j, k)
                out[i + k] = out[i + k] + term
    return DiffOp(out, n)


def formal_adjoint(D: DiffOp) -> DiffOp:
    """``(d^j F)* = (-1)^j sum_k C(j, k) d^k (F*)^(j-k)``."""
    n = D.n
    out = [MatPoly.zero(n) for _ in range(len(D.coeffs))]
    for j, F in enumerate(D.coeffs):
        Fs = F.conj_transpose()
        sign = -1 if j % 2 else 1
        deriv = Fs
        for r in range(j + 1):  # r = j - k derivatives
            k = j - r
            if r:
                deriv = deriv.derivative()
            if deriv.is_zero():
                break
            out[k] = out[k] + deriv * (sign * comb(j, k))
    return DiffOp(out, n)


def _check_inverse(T: MatPoly, Tinv: MatPoly):
    I = MatPoly.identity(T.n)
    if T * Tinv != I or Tinv * T != I:
        raise NotInverse("Tinv is not a two-sided inverse of T")


def conjugate_by_polynomial(T: MatPoly, Tinv: MatPoly, D: DiffOp) -> DiffOp:
    """``T^{-1} D T``: the operator ``P -> ((P Tinv) . D) T``."""
    _check_inverse(T, Tinv)
    return DiffOp.mult(Tinv) * D * DiffOp.mult(T)


def degree_profile_ok(D: DiffOp) -> bool:
    return all(F.degree <= j for j, F in enumerate(D.coeffs))


# -- operators with exponential-polynomial coefficients ----------------------

class ExpDiffOp:
    """``sum_j d^j F_j`` with :class:`ExpPoly` coefficients."""

    __slots__ = ("coeffs", "n")

    def __init__(self, coeffs: Sequence[ExpPoly], n: int):
        self.n = n
        self.coeffs = _trim(coeffs, ExpPoly.is_zero)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def coeff(self, j: int) -> ExpPoly:
        return self.coeffs[j] if j < len(self.coeffs) else ExpPoly.zero(self.n)

    def is_polynomial(self) -> bool:
        return all(F.is_polynomial() for F in self.coeffs)

    def __add__(self, other: "ExpDiffOp"):
        m = max(len(self.coeffs), len(other.coeffs))
        return ExpDiffOp([self.coeff(j) + other.coeff(j) for j in range(m)], self.n)

    def times_right(self, M: MatPoly) -> "ExpDiffOp":
        """Compose with right multiplication by a matrix polynomial."""
        return ExpDiffOp([F * M for F in self.coeffs], self.n)

    def to_diffop(self) -> DiffOp:
        if not self.is_polynomial():
            raise NonPolynomialAdjoint("operator has exponential coefficients")
        return DiffOp([F.polynomial_part() for F in self.coeffs], self.n)

    def __repr__(self):
        return f"ExpDiffOp(order={self.order}, n={self.n})"


def compose_exp(D: DiffOp, E: ExpDiffOp) -> ExpDiffOp:
    """``D * E`` for polynomial ``D``; only ``D``'s coefficients get differentiated."""
    n = D.n
    out = [ExpPoly.zero(n) for _ in range(D.order + E.order + 1)]
    for i, F in enumerate(D.coeffs):
        for j, G in enumerate(E.coeffs):
            Fd = F
            for k in range(j, -1, -1):  # derivative order r = j - k
                if k != j:
                    Fd = Fd.derivative()
                if Fd.is_zero():
                    break
                out[i + k] = out[i + k] + (Fd * comb(j, k)) * G
    return ExpDiffOp(out, n)


def conjugate_by_weight_diag(exponents, D: DiffOp) -> ExpDiffOp:
    """``Wt^{-1} D Wt`` for ``Wt = diag(exp(q_i))``, ``q_i = alpha_i x^2 + gamma_i x``.

    ``Wt^{-1} d Wt = dI - diag(q_i')`` and the coefficient entry ``(i, j)``
    picks up ``exp(q_j - q_i)``.
    """
    n = D.n
    qs = [quad_key(*q) for q in exponents]
    if len(qs) != n:
        raise SizeMismatch(f"{len(qs)} exponents for size {n}")
    shift = MatPoly([[Poly((-g, -2 * a)) if i == j else Poly() for j, (a, g) in enumerate(qs)]
                     for i in range(n)])
    step = DiffOp.partial(n) + DiffOp.mult(shift)
    power = DiffOp.identity(n)
    out = ExpDiffOp([], n)
    for j, F in enumerate(D.coeffs):
        if j:
            power = power * step
        if F.is_zero():
            continue
        terms = []
        for r in range(n):
            for c in range(n):
                if F[r, c].is_zero():
                    continue
                key = (qs[c][0] - qs[r][0], qs[c][1] - qs[r][1])
                terms.append((key, MatPoly.unit(n, r, c, F[r, c])))
        Ft = ExpPoly(terms, n)
        out = out + compose_exp(power, ExpDiffOp([Ft], n))
    return out


def formal_W_adjoint(D: DiffOp, W) -> DiffOp:
    """``D^dagger = W D^* W^{-1}`` computed through ``W = T Wt T^*``.

    ``D^dagger = T (Wt (T^* D^* T^{*-1}) Wt^{-1}) T^{-1}``; every stage stays
    inside exponential-polynomial coefficients.  Raises
    :class:`NonPolynomialAdjoint` when exponential factors survive.
    """
    Ds = formal_adjoint(D)
    Ts, Tinvs = W.T.conj_transpose(), W.Tinv.conj_transpose()
    inner = conjugate_by_polynomial(Tinvs, Ts, Ds)
    neg = [(-quad_key(*q)[0], -quad_key(*q)[1]) for q in W.diag_exponents]
    middle = conjugate_by_weight_diag(neg, inner)
    outer = compose_exp(DiffOp.mult(W.T), middle).times_right(W.Tinv)
    return outer.to_diffop()
