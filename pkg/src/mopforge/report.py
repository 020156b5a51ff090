"""Verification suite: each check returns a status and a JSON-ready detail dict."""
from __future__ import annotations

import json
import random
import time
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Callable

import numpy as np

from . import __version__
from .diffop import apply_right, conjugate_by_polynomial
from .dwalgebra import (
    build_generators,
    factored_blocks,
    fourier_shape_extract,
    leading_form,
    module_decompose,
    module_to_operator,
    orthogonal_triple_search,
    random_module_element,
    relation_residuals,
    same_span,
    solve_DW_detailed,
)
from .errors import MopForgeError
from .linalg import mat_inv
from .matpoly import MatPoly
from .orthopoly import (
    const,
    conjugated_eigenvalue,
    eigenvalue_extract,
    eigenvalue_formula,
    explicit_Qn,
    leading_An,
    mat_equal,
    monic_gram_schmidt,
    monic_sequence,
    recurrence_comparison,
    recurrence_extract,
    paper_recurrence,
)
from .scalar import Params, Scalar, default_precision
from .weight import (
    check_symmetry_order2,
    factored_weight,
    inner_product_exact,
    inner_product_quadrature,
    exact_to_numeric,
    is_w_symmetric,
    make_weight,
    symmetry_residuals,
)

SCHEMA = "mop-forge/1"
MODES = ("exact", "numeric", "both")


@dataclass(frozen=True)
class RunConfig:
    params: Params = Params(1, 1, 1)
    n_max: int = 8
    order_max: int = 4
    degree_bound: int = 3
    mode: str = "both"
    output: str | None = None
    seed: int = 0

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}")
        if self.n_max < 1:
            raise ValueError("n_max must be >= 1")
        if self.order_max < 0:
            raise ValueError("order_max must be >= 0")
        if self.degree_bound < 1:
            raise ValueError("degree_bound must be >= 1")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must fit in 64 bits")

    def echo(self) -> dict:
        return {
            "params": str(self.params),
            "n_max": self.n_max,
            "order_max": self.order_max,
            "degree_bound": self.degree_bound,
            "mode": self.mode,
            "seed": self.seed,
            "precision_bits": default_precision(),
        }


@dataclass
class CheckRecord:
    id: str
    paper_ref: str
    status: str
    detail: dict = field(default_factory=dict)


@dataclass
class Check:
    id: str
    paper_ref: str
    kind: str  # "exact" or "numeric"
    run: Callable[["Context"], tuple[bool, dict]]


class Context:
    """Lazily built shared objects for one run."""

    def __init__(self, cfg: RunConfig):
        self.cfg = cfg
        self.params = cfg.params
        self._W = None
        self._g = None
        self._Q = {}

    @property
    def W(self):
        if self._W is None:
            self._W = make_weight(self.params)
        return self._W

    @property
    def g(self):
        if self._g is None:
            self._g = build_generators(self.params)
        return self._g

    def Q(self, n: int) -> MatPoly:
        if n not in self._Q:
            self._Q[n] = explicit_Qn(n, self.params)
        return self._Q[n]


def _s(x) -> str:
    return str(x)


def _matrix_str(M) -> list:
    return [[_s(e) for e in r] for r in M]


# -- individual checks ---------------------------------------------------------

def check_weight_factorization(ctx):
    W = ctx.W
    diff = W.W - factored_weight(W)
    return diff.is_zero(), {"residual_terms": len(diff.terms)}


def check_weight_positive(ctx):
    W = ctx.W
    xs = [-3, -1, 0, Fraction(1, 2), 1, 3]
    mins = []
    for x0 in xs:
        M = np.array(W.eval_mp(x0).tolist(), dtype=float)
        mins.append(float(np.linalg.eigvalsh((M + M.T) / 2).min()))
    return all(m > 0 for m in mins), {"sample_points": [_s(x) for x in xs],
                                      "min_eigenvalues": [f"{m:.6e}" for m in mins]}


def _symmetry(which):
    def run(ctx):
        D = getattr(ctx.g, which)
        res = symmetry_residuals(D, ctx.W)
        order2 = check_symmetry_order2(D, ctx.W)
        adj = is_w_symmetric(D, ctx.W)
        detail = {"symmetry_equations": order2, "w_adjoint_fixed": adj}
        if not order2:
            detail["residuals"] = {k: [[_s(a), _s(g), v.to_json()] for (a, g), v in r.terms.items()]
                                   for k, r in res.items() if not r.is_zero()}
        return order2 and adj, detail
    return run


def check_orthogonality_exact(ctx):
    n_max = ctx.cfg.n_max
    bad = []
    for n in range(n_max + 1):
        for m in range(n):
            H = inner_product_exact(ctx.Q(n), ctx.Q(m), ctx.W)
            if any(e for r in H for e in r):
                bad.append([n, m])
    return not bad, {"pairs_checked": n_max * (n_max + 1) // 2, "nonzero_pairs": bad}


def check_orthogonality_quadrature(ctx):
    n_max = ctx.cfg.n_max
    b = ctx.params.b
    worst = 0.0
    for n in range(n_max + 1):
        for m in range(n + 1):
            exact = exact_to_numeric(inner_product_exact(ctx.Q(n), ctx.Q(m), ctx.W), b)
            quad = inner_product_quadrature(ctx.Q(n), ctx.Q(m), ctx.W, nodes=64)
            scale = np.sqrt(np.abs(np.diag(_norm_num(ctx, n))).max()
                            * np.abs(np.diag(_norm_num(ctx, m))).max())
            worst = max(worst, float(np.abs(quad - exact).max() / scale))
    return worst <= 1e-10, {"nodes": 64, "max_relative_error": f"{worst:.3e}", "tolerance": "1e-10"}


def _norm_num(ctx, n):
    cache = ctx.__dict__.setdefault("_norms", {})
    if n not in cache:
        cache[n] = exact_to_numeric(inner_product_exact(ctx.Q(n), ctx.Q(n), ctx.W), ctx.params.b)
    return cache[n]


def check_gram_schmidt(ctx):
    n_max = ctx.cfg.n_max
    P = monic_gram_schmidt(n_max, ctx.W)
    bad = []
    for n in range(n_max + 1):
        Ainv = mat_inv(leading_An(n, ctx.params))
        if P[n] != const(Ainv) * ctx.Q(n):
            bad.append(n)
    return not bad, {"n_max": n_max, "failures": bad}


def _display_lambda(which, n, params):
    a, b, c = params.as_tuple()
    if which == "D1":
        M = [[-2 * n, -2 * a * b * n, 0], [0, 2 - 2 * n, 0], [0, 0, -2 * n]]
    else:
        mu = 2 * (c * c + 2) / (c * c)
        M = [[mu, 0, -(2 * a / c) * (n + 1)], [0, mu, 0], [0, 0, -2 * n]]
    return [[Scalar(e) for e in r] for r in M]


def check_eigen_displays(ctx):
    n_max = max(ctx.cfg.n_max, 12)
    bad = []
    for which in ("D1", "D2"):
        D = getattr(ctx.g, which)
        for n in range(n_max + 1):
            lam = conjugated_eigenvalue(_display_lambda(which, n, ctx.params), n, ctx.params)
            if apply_right(ctx.Q(n), D) != const(lam) * ctx.Q(n):
                bad.append([which, n])
    return not bad, {"n_range": [0, n_max], "failures": bad}


def check_eigen_formula(ctx):
    n_max = max(ctx.cfg.n_max, 10)
    monic = monic_sequence(ctx.W, n_max)
    bad = []
    for which in ("D1", "D2"):
        D = getattr(ctx.g, which)
        for n in range(n_max + 1):
            f = eigenvalue_formula(D, n)
            try:
                e = eigenvalue_extract(D, n, monic)
            except MopForgeError:
                bad.append([which, n])
                continue
            if not (mat_equal(f, e) and mat_equal(f, _display_lambda(which, n, ctx.params))):
                bad.append([which, n])
    return not bad, {"n_range": [0, n_max], "failures": bad}


def check_relations(ctx):
    res = relation_residuals(ctx.g)
    return all(r.is_zero() for r in res.values()), {k: r.is_zero() for k, r in res.items()}


def check_quotient_relation(ctx):
    g = ctx.g
    prod = (g.D1 - g.D2) * (g.D2 - g.mu)
    return prod.is_zero(), {"mu": _s(g.mu), "product_order": prod.order}


def check_factored_forms(ctx):
    g = ctx.g
    B1, B2 = factored_blocks(ctx.params)
    ok1 = conjugate_by_polynomial(g.T, g.Tinv, g.D1) == B1
    ok2 = conjugate_by_polynomial(g.T, g.Tinv, g.D2) == B2
    return ok1 and ok2, {"D1": ok1, "D2": ok2}


def check_recurrence(ctx):
    n_max = ctx.cfg.n_max
    seq = [ctx.Q(k) for k in range(n_max + 2)]
    mismatches, flagged, zero_printed = [], [], []
    for n in range(n_max + 1):
        recurrence_extract(n, seq)  # raises if x Q_n is not reproduced
        for row in recurrence_comparison(n, ctx.params, seq):
            tag = f"{row['matrix']}{row['entry'][0]}{row['entry'][1]}"
            if row["verdict"] == "mismatch":
                mismatches.append([n, tag])
            elif row["verdict"] == "flagged" and n in (1, n_max):
                flagged.append({"n": n, "entry": tag, "extracted": _s(row["extracted"]),
                                "literal_reading": _s(row["printed"])})
            elif row["verdict"] == "printed_zero" and n in (1, n_max):
                zero_printed.append({"n": n, "entry": tag, "extracted": _s(row["extracted"])})
    resolved_ok = all(
        recurrence_extract(n, seq).C[i][j] == paper_recurrence(n, ctx.params)["resolved_flagged"][(i, j)]
        for n in range(n_max + 1) for (i, j) in ((0, 0), (2, 2)))
    return not mismatches and resolved_ok, {
        "n_max": n_max,
        "unambiguous_mismatches": mismatches,
        "flagged": flagged,
        "flagged_resolution": {"C11": "n (g_n + a^2 beta) / (2 g_n)", "C33": "n (g_n + c^2) / (2 g_n)",
                               "holds": resolved_ok},
        "printed_zero_but_nonzero": zero_printed,
    }


def _expected_dimension(order):
    p = order // 2 + 1
    q = (order - 2) // 2 + 1 if order >= 2 else 0
    return p + q


def _expected_span(order, g):
    ops = []
    for k in range(order // 2 + 1):
        ops.append(g.d1_power(k))
        if 2 * k + 2 <= order:
            ops.append(g.d1_power_d2(k))
    return ops


def _solutions(ctx):
    cache = ctx.__dict__.setdefault("_solve", {})
    for order in range(0, ctx.cfg.order_max + 1, 2):
        if order not in cache:
            cache[order] = solve_DW_detailed(order, ctx.W, seed=ctx.cfg.seed)
    return cache


def check_solver(ctx):
    sols = _solutions(ctx)
    rows, ok = [], True
    for order, r in sorted(sols.items()):
        want = _expected_dimension(order)
        span_ok = same_span(r.basis, _expected_span(order, ctx.g), order)
        good = len(r.basis) == want and span_ok and r.antisymmetric_rank == 0
        ok &= good
        rows.append({"order": order, "dimension": len(r.basis), "expected": want, "span_matches": span_ok,
                     "method": r.method, "n_fit": r.n_fit, "n_check": r.n_check})
    return ok, {"orders": rows}


def check_solver_structure(ctx):
    sols = _solutions(ctx)
    top = sols[max(sols)]
    basis = top.basis
    commute = all((A * B - B * A).is_zero() for i, A in enumerate(basis) for B in basis[i + 1:])
    shapes, decomp, lead = True, True, True
    for D in basis:
        try:
            fourier_shape_extract(D, ctx.g)
        except MopForgeError:
            shapes = False
        try:
            decomp &= module_to_operator(module_decompose(D, ctx.g), ctx.g) == D
        except MopForgeError:
            decomp = False
        lead &= leading_form(D, ctx.params) is not None
    return commute and shapes and decomp and lead, {
        "order": top.order, "basis_size": len(basis), "pairwise_commute": commute,
        "fourier_shape": shapes, "module_round_trip": decomp, "leading_coefficient_form": lead}


def check_module_round_trip(ctx):
    rng = random.Random(ctx.cfg.seed)
    bad = 0
    for _ in range(25):
        m = random_module_element(rng, degree=3)
        if module_decompose(module_to_operator(m, ctx.g), ctx.g) != m:
            bad += 1
    return bad == 0, {"samples": 25, "max_degree": 3, "failures": bad}


def check_triple_search(ctx):
    cert = orthogonal_triple_search(ctx.g, ctx.cfg.degree_bound)
    pairs_ok = all(p["E1_nonzero"] and p["E2_nonzero"] and p["E1E2_zero"] and p["E2E1_zero"]
                   for p in cert["pairs"])
    return cert["result"] == "no_triple" and pairs_ok, cert


def check_identity_gram_quadrature(ctx):
    I = MatPoly.identity(3)
    exact = exact_to_numeric(inner_product_exact(I, I, ctx.W), ctx.params.b)
    quad = inner_product_quadrature(I, I, ctx.W, nodes=64)
    err = float(np.abs(quad - exact).max() / np.abs(exact).max())
    return err <= 1e-10, {"max_relative_error": f"{err:.3e}"}


SUITE = [
    Check("weight.factorization", "weight: W = T W~ T*", "exact", check_weight_factorization),
    Check("weight.positive_definite", "weight: positive definite on R", "numeric", check_weight_positive),
    Check("weight.moments_quadrature", "weight: moments vs Gauss-Hermite", "numeric",
          check_identity_gram_quadrature),
    Check("symmetry.D1", "second-order symmetry equations and W-adjoint", "exact", _symmetry("D1")),
    Check("symmetry.D2", "second-order symmetry equations and W-adjoint", "exact", _symmetry("D2")),
    Check("orthogonality.exact", "explicit Q_n orthogonality", "exact", check_orthogonality_exact),
    Check("orthogonality.quadrature", "explicit Q_n orthogonality, 64-node quadrature", "numeric",
          check_orthogonality_quadrature),
    Check("orthopoly.gram_schmidt", "monic P_n = A_n^-1 Q_n", "exact", check_gram_schmidt),
    Check("eigen.displays", "Q_n D_i = A_n Lambda_n A_n^-1 Q_n", "exact", check_eigen_displays),
    Check("eigen.formula", "Lambda_n(D) = sum [n]_i F_i^i", "exact", check_eigen_formula),
    Check("relations.generators", "D1 D2 = D2 D1 and D2 D1 = D2^2 + mu (D1 - D2)", "exact",
          check_relations),
    Check("relations.factored_forms", "T^-1 D_i T block forms", "exact", check_factored_forms),
    Check("recurrence", "three-term recurrence with g_n", "exact", check_recurrence),
    Check("solver.dimensions", "D(W) = C[D1] I + C[D1] D2, bounded order", "exact", check_solver),
    Check("solver.structure", "commutativity, Fourier shape, leading coefficients", "exact",
          check_solver_structure),
    Check("module.round_trip", "module decomposition over C[D1]", "exact", check_module_round_trip),
    Check("relations.quotient", "(D1 - D2)(D2 - mu I) = 0", "exact", check_quotient_relation),
    Check("nonfull.certificate", "no three pairwise annihilating elements", "exact", check_triple_search),
]


def run_suite(cfg: RunConfig, checks=None, progress=None) -> dict:
    ctx = Context(cfg)
    records = []
    for chk in checks or SUITE:
        if cfg.mode != "both" and chk.kind != cfg.mode:
            records.append(CheckRecord(chk.id, chk.paper_ref, "skipped", {"reason": f"mode={cfg.mode}"}))
            continue
        t0 = time.perf_counter()
        try:
            ok, detail = chk.run(ctx)
            status = "pass" if ok else "fail"
        except (MopForgeError, ArithmeticError, ValueError, TypeError) as exc:
            status, detail = "fail", {"error": type(exc).__name__, "message": str(exc)}
        records.append(CheckRecord(chk.id, chk.paper_ref, status, detail))
        if progress:
            progress(records[-1], time.perf_counter() - t0)
    counts = {s: sum(r.status == s for r in records) for s in ("pass", "fail", "skipped")}
    return {
        "schema": SCHEMA,
        "version": __version__,
        "config": cfg.echo(),
        "checks": [asdict(r) for r in records],
        "summary": counts,
    }


def to_json(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True, default=str) + "\n"
