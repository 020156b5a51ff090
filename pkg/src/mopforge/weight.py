"""The 3x3 Hermite-type weight, its inner products and symmetry tests."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import mpmath
import numpy as np

from .diffop import DiffOp, formal_W_adjoint
from .errors import InconsistencyError, InsufficientNodes, NonPolynomialAdjoint, SizeMismatch
from .expfun import ExpPoly, diagonal_exp, expfun_decays_at_infinity
from .matpoly import MatPoly, Poly
from .scalar import ZERO, Params, Scalar, default_precision, to_fraction


@dataclass(frozen=True)
class WeightSpec:
    """``W = T Wt T^*`` with ``Wt = diag(exp(q_i))`` and polynomial ``T, T^{-1}``."""

    W: ExpPoly
    T: MatPoly
    Tinv: MatPoly
    diag_exponents: tuple
    params: Params
    _cache: dict = field(default_factory=dict, compare=False, repr=False)

    @property
    def n(self) -> int:
        return self.T.n

    @property
    def W_tilde(self) -> ExpPoly:
        return diagonal_exp(self.diag_exponents)

    def eval_mp(self, x, precision: int | None = None):
        b = self.params.b
        with mpmath.workprec(precision or default_precision()):
            beta = mpmath.exp(-(mpmath.mpf(b.numerator) / b.denominator) ** 2)
            x = to_fraction(x)
            return self.W.eval_mp(mpmath.mpf(x.numerator) / x.denominator, beta)


def t_matrix(params: Params) -> tuple[MatPoly, MatPoly]:
    """``T = I + A x`` and ``T^{-1} = I - A x`` for the nilpotent ``A``."""
    a, c = params.a, params.c
    x = Poly.x()
    T = MatPoly([[1, x * a, 0], [0, 1, 0], [0, x * c, 1]])
    Tinv = MatPoly([[1, x * (-a), 0], [0, 1, 0], [0, x * (-c), 1]])
    return T, Tinv


def weight_closed_form(params: Params) -> ExpPoly:
    """The weight entry by entry, as written out in closed form."""
    a, b, c = params.as_tuple()
    x2 = Poly((0, 0, 1))
    x = Poly.x()
    gauss = MatPoly([
        [x2 * (a * a), x * a, x2 * (a * c)],
        [x * a, 1, x * c],
        [x2 * (a * c), x * c, x2 * (c * c) + 1],
    ])
    return ExpPoly([((-1, 2 * b), MatPoly.unit(3, 0, 0)), ((-1, 0), gauss)], 3)


def make_weight(params: Params) -> WeightSpec:
    T, Tinv = t_matrix(params)
    exps = ((Fraction(-1), 2 * params.b), (Fraction(-1), Fraction(0)), (Fraction(-1), Fraction(0)))
    W = weight_closed_form(params)
    spec = WeightSpec(W, T, Tinv, exps, params)
    I = MatPoly.identity(3)
    if T * Tinv != I or Tinv * T != I:
        raise InconsistencyError("T and T^{-1} are not inverse")
    if not (W - factored_weight(spec)).is_zero():
        raise InconsistencyError("W differs from T Wt T^*")
    for x0 in (-1, 0, 1):
        Wx = np.array(spec.eval_mp(x0, 64).tolist(), dtype=float)
        if not np.allclose(Wx, Wx.T) or np.linalg.eigvalsh(Wx).min() <= 0:
            raise InconsistencyError(f"W({x0}) is not Hermitian positive definite")
    return spec


def factored_weight(spec: WeightSpec) -> ExpPoly:
    return spec.T * spec.W_tilde * spec.T.conj_transpose()


# -- moments and exact inner products -----------------------------------------

@lru_cache(maxsize=None)
def _moments(b: Fraction, K: int) -> tuple:
    m = [Fraction(1), b]
    for k in range(2, K + 1):
        m.append(b * m[k - 1] + Fraction(k - 1, 2) * m[k - 2])
    return tuple(m[: K + 1])


@dataclass(frozen=True)
class MomentTable:
    """``int x^k exp(-x^2 + 2 b x) dx = sqrt(pi) * beta^-1 * M_k`` (``beta^-1`` only if ``b != 0``)."""

    b: Fraction
    values: tuple

    def __getitem__(self, k: int) -> Fraction:
        return self.values[k]

    def __len__(self):
        return len(self.values)


def moments(b, K: int) -> MomentTable:
    """Normalized moments ``M_k = b M_{k-1} + (k-1)/2 M_{k-2}``, ``M_0 = 1``."""
    if K < 0:
        raise ValueError("K must be non-negative")
    b = to_fraction(b)
    return MomentTable(b, _moments(b, max(K, 1))[: K + 1])


def gaussian_integral(p: Poly, alpha, gamma, b_param: Fraction) -> Scalar:
    """``int p(x) exp(alpha x^2 + gamma x) dx / sqrt(pi)`` for ``alpha = -1``.

    ``gamma`` must be an integer multiple ``2 k b`` so the prefactor
    ``exp(gamma^2/4) = beta^(-k^2)`` stays in the scalar field.
    """
    alpha, gamma = to_fraction(alpha), to_fraction(gamma)
    if alpha != -1:
        raise ValueError("only exp(-x^2 + gamma x) envelopes are supported")
    shift = gamma / 2
    if shift == 0:
        k = 0
    else:
        ratio = shift / b_param
        if ratio.denominator != 1:
            raise ValueError(f"exponent {gamma} is not a multiple of 2b")
        k = int(ratio)
    table = moments(shift, max(p.degree, 0))
    acc = ZERO
    for j, c in enumerate(p.coeffs):
        if not c.is_zero():
            acc = acc + c * table[j]
    return acc * Scalar.beta(-k * k) if k else acc


def inner_product_exact(P: MatPoly, Q: MatPoly, W: WeightSpec):
    """``<P, Q>_W / sqrt(pi)`` as a matrix of scalars, via ``<P T, Q T>_{Wt}``."""
    if P.n != W.n or Q.n != W.n:
        raise SizeMismatch("inner product size mismatch")
    PT, QT = P * W.T, Q * W.T
    n = W.n
    out = [[ZERO] * n for _ in range(n)]
    b = W.params.b
    for k, (alpha, gamma) in enumerate(W.diag_exponents):
        for i in range(n):
            u = PT[i, k]
            if u.is_zero():
                continue
            for j in range(n):
                v = QT[j, k]
                if v.is_zero():
                    continue
                out[i][j] = out[i][j] + gaussian_integral(u * v, alpha, gamma, b)
    return out


def inner_product_weight(P: MatPoly, Q: MatPoly, W: WeightSpec):
    """Same quantity as :func:`inner_product_exact`, integrating ``P W Q^*`` term by term."""
    f = P * W.W * Q.conj_transpose()
    n = W.n
    out = [[ZERO] * n for _ in range(n)]
    for (alpha, gamma), payload in f.terms.items():
        for i in range(n):
            for j in range(n):
                if not payload[i, j].is_zero():
                    out[i][j] = out[i][j] + gaussian_integral(payload[i, j], alpha, gamma, W.params.b)
    return out


# -- Gauss-Hermite quadrature --------------------------------------------------

@lru_cache(maxsize=None)
def gauss_hermite(nodes: int, precision: int):
    """Nodes and weights for ``int f(t) exp(-t^2) dt`` at ``precision`` bits.

    Float64 nodes are polished by Newton steps on the orthonormal Hermite
    recurrence; weights use ``1 / sum_k phi_k(t)^2``.
    """
    guess, _ = np.polynomial.hermite.hermgauss(nodes)
    with mpmath.workprec(precision + 32):
        pi_q = mpmath.pi ** mpmath.mpf(0.25)
        xs, ws = [], []
        for t0 in guess:
            t = mpmath.mpf(t0)
            for _ in range(100):
                phi, dphi, _ = _orthonormal_hermite(nodes, t, pi_q)
                step = phi / dphi
                t -= step
                if abs(step) < mpmath.mpf(2) ** (-precision - 8):
                    break
            _, _, sq = _orthonormal_hermite(nodes, t, pi_q)
            xs.append(t)
            ws.append(1 / sq)
    return tuple(xs), tuple(ws)


def _orthonormal_hermite(n, t, pi_q):
    """``phi_n(t)``, ``phi_n'(t)`` and ``sum_{k<n} phi_k(t)^2`` (orthonormal w.r.t. ``exp(-t^2)``)."""
    p_prev, p = mpmath.mpf(0), 1 / pi_q
    d_prev, d = mpmath.mpf(0), mpmath.mpf(0)
    sq = mpmath.mpf(0)
    for k in range(n):
        sq += p * p
        # phi_{k+1} = sqrt(2/(k+1)) t phi_k - sqrt(k/(k+1)) phi_{k-1}
        c1 = mpmath.sqrt(mpmath.mpf(2) / (k + 1))
        c2 = mpmath.sqrt(mpmath.mpf(k) / (k + 1))
        p_next = c1 * t * p - c2 * p_prev
        d_next = c1 * (p + t * d) - c2 * d_prev
        p_prev, p = p, p_next
        d_prev, d = d, d_next
    return p, d, sq


def inner_product_quadrature(P: MatPoly, Q: MatPoly, W: WeightSpec, nodes: int = 64,
                             precision: int | None = None):
    """``<P, Q>_W`` by Gauss-Hermite quadrature, one shifted rule per exponential term."""
    precision = precision or default_precision()
    f = P * W.W * Q.conj_transpose()
    need = max((p.degree for p in f.terms.values()), default=0)
    if nodes < need / 2 + 1:
        raise InsufficientNodes(f"{nodes} nodes cannot integrate degree {need} exactly")
    xs, ws = gauss_hermite(nodes, precision)
    b = W.params.b
    n = W.n
    with mpmath.workprec(precision):
        beta = mpmath.exp(-(mpmath.mpf(b.numerator) / b.denominator) ** 2)
        out = mpmath.zeros(n, n)
        for (alpha, gamma), payload in f.terms.items():
            if alpha != -1:
                raise ValueError("only exp(-x^2 + gamma x) envelopes are supported")
            g = mpmath.mpf(gamma.numerator) / gamma.denominator
            shift = g / 2
            pref = mpmath.exp(shift * shift)
            coeffs = [[[c.eval_mp(beta) for c in payload[i, j].coeffs] for j in range(n)]
                      for i in range(n)]
            for i in range(n):
                for j in range(n):
                    cs = coeffs[i][j]
                    if not cs:
                        continue
                    acc = mpmath.mpf(0)
                    for t, w in zip(xs, ws):
                        acc += mpmath.polyval(cs[::-1], t + shift) * w
                    out[i, j] += acc * pref
        return np.array(out.tolist(), dtype=float)


def exact_to_numeric(M, b, precision: int | None = None, with_sqrt_pi: bool = True):
    """Evaluate a matrix of scalars, optionally restoring the ``sqrt(pi)`` factor."""
    precision = precision or default_precision()
    b = to_fraction(b)
    with mpmath.workprec(precision):
        beta = mpmath.exp(-(mpmath.mpf(b.numerator) / b.denominator) ** 2)
        f = mpmath.sqrt(mpmath.pi) if with_sqrt_pi else 1
        return np.array([[float(e.eval_mp(beta) * f) for e in r] for r in M], dtype=float)


# -- symmetry -----------------------------------------------------------------

def symmetry_residuals(D: DiffOp, W: WeightSpec) -> dict:
    """Residual functions of the second-order symmetry equations and boundary terms."""
    if D.order > 2:
        raise ValueError("symmetry equations apply to operators of order <= 2")
    F0, F1, F2 = (D.coeff(j) for j in range(3))
    Wf = W.W
    F2W, F1W, F0W = F2 * Wf, F1 * Wf, F0 * Wf
    W_F1s = Wf * F1.conj_transpose()
    F2W_d = F2W.derivative()
    return {
        "F2W = WF2*": F2W - Wf * F2.conj_transpose(),
        "2(F2W)' - F1W = WF1*": F2W_d * 2 - F1W - W_F1s,
        "(F2W)'' - (F1W)' + F0W = WF0*": F2W_d.derivative() - F1W.derivative() + F0W
        - Wf * F0.conj_transpose(),
        "boundary F2W": F2W,
        "boundary F1W - WF1*": F1W - W_F1s,
    }


def check_symmetry_order2(D: DiffOp, W: WeightSpec) -> bool:
    r = symmetry_residuals(D, W)
    identities = all(r[k].is_zero() for k in list(r)[:3])
    boundary = expfun_decays_at_infinity(r["boundary F2W"]) and expfun_decays_at_infinity(
        r["boundary F1W - WF1*"])
    return identities and boundary


def is_w_symmetric(D: DiffOp, W: WeightSpec) -> bool:
    try:
        return formal_W_adjoint(D, W) == D
    except NonPolynomialAdjoint:
        return False
