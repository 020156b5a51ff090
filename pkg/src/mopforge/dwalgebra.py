"""The algebra D(W): generators, relations, bounded-order solver, Fourier
shape, module decomposition over C[D1] and the non-fullness certificate."""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

import flint

from . import linalg
from .diffop import DiffOp, conjugate_by_polynomial, formal_W_adjoint
from .errors import (
    InconsistencyError,
    NonzeroRemainder,
    NotInPolynomialAlgebra,
    ShapeViolation,
    SolverVerificationError,
)
from .matpoly import MatPoly, Poly
from .orthopoly import const, eigenvalue_formula, falling_factorial, monic_sequence
from .scalar import ONE, ZERO, Params, Scalar, to_fmpq, to_fraction
from .weight import WeightSpec, is_w_symmetric, t_matrix


def delta_op(shift=0) -> DiffOp:
    """Scalar Hermite operator ``d^2 + d (-2x + 2 shift)``."""
    shift = to_fraction(shift)
    return DiffOp.scalar_op([0, Poly((2 * shift, -2)), 1])


def _sop(*coeffs) -> DiffOp:
    return DiffOp.scalar_op(coeffs)


@dataclass
class GeneratorSet:
    params: Params
    D1: DiffOp
    D2: DiffOp
    mu: Scalar
    factored_D1: DiffOp
    factored_D2: DiffOp
    T: MatPoly
    Tinv: MatPoly
    _powers: list = field(default_factory=list, repr=False)
    _powers_d2: list = field(default_factory=list, repr=False)

    def d1_power(self, k: int) -> DiffOp:
        if not self._powers:
            self._powers.append(DiffOp.identity(3))
        while len(self._powers) <= k:
            self._powers.append(self._powers[-1] * self.D1)
        return self._powers[k]

    def d1_power_d2(self, k: int) -> DiffOp:
        while len(self._powers_d2) <= k:
            self._powers_d2.append(self.d1_power(len(self._powers_d2)) * self.D2)
        return self._powers_d2[k]


def generator_operators(params: Params) -> tuple[DiffOp, DiffOp]:
    a, b, c = params.as_tuple()
    x = Poly.x()
    mu = 2 + Fraction(4) / (c * c)
    D1 = DiffOp([
        MatPoly([[0, 0, 0], [0, 2, 0], [0, 0, 0]]),
        MatPoly([[x * -2 + 2 * b, x * (-2 * b * a) + 2 * a, 0],
                 [0, x * -2, 0],
                 [0, 2 * c, x * -2]]),
        MatPoly.identity(3),
    ])
    D2 = DiffOp([
        MatPoly([[mu, 0, -2 * a / c], [0, mu, 0], [0, 0, 0]]),
        MatPoly([[0, 2 * a, x * (-2 * a / c)],
                 [0, 0, -2 / c],
                 [0, 2 * c + 2 / c, x * -2]]),
        MatPoly([[0, x * a, 0], [0, 1, 0], [0, x * c, 0]]),
    ])
    return D1, D2


def factored_blocks(params: Params) -> tuple[DiffOp, DiffOp]:
    """The block operators ``B_i`` with ``D_i = T B_i T^{-1}``."""
    b, c = params.b, params.c
    mu = 2 * (c * c + 2) / (c * c)
    d, db = delta_op(0), delta_op(b)
    B1 = DiffOp.from_entries([[db, None, None], [None, d + 2, None], [None, None, d]])
    B2 = DiffOp.from_entries([
        [_sop(mu), None, None],
        [None, d + mu, _sop(0, -2 / c)],
        [None, _sop(Poly((0, -4 / c)), 2 / c), _sop(2)],
    ])
    return B1, B2


def build_generators(params: Params) -> GeneratorSet:
    D1, D2 = generator_operators(params)
    B1, B2 = factored_blocks(params)
    T, Tinv = t_matrix(params)
    c = params.c
    g = GeneratorSet(params, D1, D2, Scalar(2 * (c * c + 2) / (c * c)), B1, B2, T, Tinv)
    if conjugate_by_polynomial(T, Tinv, D1) != B1 or conjugate_by_polynomial(T, Tinv, D2) != B2:
        raise InconsistencyError("generators do not conjugate to their factored forms")
    return g


def relation_residuals(g: GeneratorSet) -> dict[str, DiffOp]:
    D1, D2, mu = g.D1, g.D2, g.mu
    return {
        "D1D2 - D2D1": D1 * D2 - D2 * D1,
        "D2D1 - D2^2 - mu(D1 - D2)": D2 * D1 - D2 * D2 - (D1 - D2) * mu,
        "(D1 - D2)(D2 - mu I)": (D1 - D2) * (D2 - mu),
    }


def verify_relations(g: GeneratorSet) -> bool:
    return all(r.is_zero() for r in relation_residuals(g).values())


# -- Fourier shape ------------------------------------------------------------

@dataclass(frozen=True)
class FourierShape:
    d1: DiffOp
    d2: DiffOp
    d3: DiffOp
    d4: DiffOp
    d5: DiffOp

    def as_tuple(self):
        return (self.d1, self.d2, self.d3, self.d4, self.d5)

    def block(self) -> DiffOp:
        return DiffOp.from_entries([[self.d1, None, None],
                                    [None, self.d2, self.d3],
                                    [None, self.d4, self.d5]])

    def reassemble(self, params: Params) -> DiffOp:
        """Entrywise pattern of ``T B T^{-1}`` written out with scalar operators."""
        a, c = params.a, params.c
        X = _sop(Poly.x())
        d1, d2, d3, d4, d5 = self.as_tuple()
        return DiffOp.from_entries([
            [d1, d1 * X * (-a) + X * d2 * a - X * d3 * X * (a * c), X * d3 * a],
            [DiffOp.zero(1), d2 - d3 * X * c, d3],
            [DiffOp.zero(1), X * d2 * c + d4 - X * d3 * X * (c * c) - d5 * X * c, X * d3 * c + d5],
        ])


_FORBIDDEN = ((0, 1), (0, 2), (1, 0), (2, 0))


def fourier_shape_extract(D: DiffOp, g: GeneratorSet) -> FourierShape:
    """``B = T^{-1} D T`` split into its five allowed blocks."""
    B = conjugate_by_polynomial(g.T, g.Tinv, D)
    bad = [ij for ij in _FORBIDDEN if not B.entry(*ij).is_zero()]
    if bad:
        raise ShapeViolation(f"T^-1 D T has nonzero blocks at {[(i + 1, j + 1) for i, j in bad]}")
    return FourierShape(B.entry(0, 0), B.entry(1, 1), B.entry(1, 2), B.entry(2, 1), B.entry(2, 2))


_delta_powers: dict = {}


def _delta_power(shift: Fraction, k: int) -> DiffOp:
    pw = _delta_powers.setdefault(shift, [DiffOp.identity(1)])
    while len(pw) <= k:
        pw.append(pw[-1] * delta_op(shift))
    return pw[k]


def poly_in_delta(d: DiffOp, shift=0) -> Poly:
    """Write a scalar operator as ``p(delta_shift)`` by peeling the top order."""
    shift = to_fraction(shift)
    coeffs: dict[int, Scalar] = {}
    rest = d
    while not rest.is_zero():
        m = rest.order
        top = rest.leading_coefficient()[0, 0]
        if m % 2 or top.degree > 0:
            raise NotInPolynomialAlgebra(f"remainder of order {m} with top coefficient {top} "
                                         f"is not a polynomial in delta")
        k = m // 2
        coeffs[k] = top.coeff(0)
        rest = rest - _delta_power(shift, k) * top.coeff(0)
        if not rest.is_zero() and rest.order >= m:
            raise NotInPolynomialAlgebra("peeling did not lower the order")
    return Poly([coeffs.get(k, ZERO) for k in range(max(coeffs, default=-1) + 1)])


# -- module over C[D1] --------------------------------------------------------

@dataclass(frozen=True)
class ModuleElement:
    """``p(D1) + q(D1) D2``."""

    p: Poly
    q: Poly

    def to_json(self):
        return {"p": self.p.to_json(), "q": self.q.to_json()}

    def __str__(self):
        from .matpoly import format_poly

        return f"p(t) = {format_poly(self.p, 't')}, q(t) = {format_poly(self.q, 't')}"


def module_to_operator(m: ModuleElement, g: GeneratorSet) -> DiffOp:
    out = DiffOp.zero(3)
    for k, c in enumerate(m.p.coeffs):
        if c:
            out = out + g.d1_power(k) * c
    for k, c in enumerate(m.q.coeffs):
        if c:
            out = out + g.d1_power_d2(k) * c
    return out


def module_decompose(D: DiffOp, g: GeneratorSet) -> ModuleElement:
    """Recover ``(p, q)`` with ``D = p(D1) + q(D1) D2``.

    Subtract ``p1(D1)`` to clear the first diagonal block, then
    ``p2(D1) (-c^2/4)(D2 - mu I)`` to clear the last one; what remains must
    be zero.
    """
    b, c = g.params.b, g.params.c
    p1 = poly_in_delta(fourier_shape_extract(D, g).d1, b)
    E1 = D - module_to_operator(ModuleElement(p1, Poly()), g)
    shape = fourier_shape_extract(E1, g)
    if not shape.d1.is_zero():
        raise NonzeroRemainder("first block survived the p1(D1) subtraction")
    p2 = poly_in_delta(shape.d5, 0)
    k = Fraction(-1, 4) * c * c
    correction = module_to_operator(ModuleElement(p2 * (-k) * g.mu, p2 * k), g)
    remainder = E1 - correction
    if not remainder.is_zero():
        raise NonzeroRemainder(f"remainder of order {remainder.order} is not zero")
    return ModuleElement(p1 + p2 * (-k) * g.mu, p2 * k)


def eigenvalue_symbolic(g: GeneratorSet) -> tuple[MatPoly, MatPoly]:
    """``Lambda_n(D1)``, ``Lambda_n(D2)`` as matrix polynomials in ``n``."""
    return eigenvalue_formula(g.D1), eigenvalue_formula(g.D2)


def eigenvalue_poly(m: ModuleElement, g: GeneratorSet) -> MatPoly:
    """``p(Lambda_n(D1)) + q(Lambda_n(D1)) Lambda_n(D2)`` with entries in ``Q[n]``."""
    L1, L2 = eigenvalue_symbolic(g)
    return _mat_poly_eval(m.p, L1) + _mat_poly_eval(m.q, L1) * L2


def _mat_poly_eval(p: Poly, L: MatPoly) -> MatPoly:
    out = MatPoly.zero(L.n)
    for c in reversed(p.coeffs):
        out = out * L + MatPoly.scalar(L.n, c)
    return out


def random_module_element(rng: random.Random, degree: int = 3, max_num: int = 6) -> ModuleElement:
    def rp():
        d = rng.randint(0, degree)
        return Poly([Fraction(rng.randint(-max_num, max_num), rng.randint(1, 4)) for _ in range(d + 1)])

    return ModuleElement(rp(), rp())


def leading_form(D: DiffOp, params: Params):
    """``(alpha, beta)`` if the leading coefficient is ``[[al, be a x, 0], [0, al+be, 0], [0, be c x, al]]``."""
    a, c = params.a, params.c
    L = D.leading_coefficient()
    al = L[0, 0].coeff(0)
    be = L[1, 1].coeff(0) - al
    x = Poly.x()
    want = MatPoly([[al, x * (be * a), 0], [0, al + be, 0], [0, x * (be * c), al]])
    return (al, be) if L == want else None


# -- bounded-order solver -----------------------------------------------------

@dataclass
class SolveResult:
    order: int
    basis: list
    raw_dimension: int
    antisymmetric_rank: int
    n_fit: int
    n_check: int
    method: str
    beta_sample: Fraction | None = None


def _unknowns(order: int, N: int):
    return [(i, j, r, s) for i in range(order + 1) for j in range(i + 1)
            for r in range(N) for s in range(N)]


def _operator_from_vector(vec, order, N) -> DiffOp:
    idx = _unknowns(order, N)
    coeffs = [[[[] for _ in range(N)] for _ in range(N)] for _ in range(order + 1)]
    grid = [[[{} for _ in range(N)] for _ in range(N)] for _ in range(order + 1)]
    for val, (i, j, r, s) in zip(vec, idx):
        if val:
            grid[i][r][s][j] = val
    for i in range(order + 1):
        for r in range(N):
            for s in range(N):
                d = grid[i][r][s]
                coeffs[i][r][s] = Poly([d.get(j, ZERO) for j in range(i + 1)])
    return DiffOp([MatPoly(coeffs[i]) for i in range(order + 1)], N)


def _equation_rows(P_coeffs, n, order, N, zero):
    """Rows of ``P_n . D - Lambda_n(D) P_n = 0`` in the unknowns ``F_{ij}[r][s]``.

    ``P_coeffs[i]`` holds the x-power coefficient lists of ``P_n^{(i)}``:
    ``P_coeffs[i][u][r][k]``.
    """
    idx = _unknowns(order, N)
    rows = {}

    def row(u, v, k):
        key = (u, v, k)
        if key not in rows:
            rows[key] = {}
        return rows[key]

    for col, (i, j, r, s) in enumerate(idx):
        if i < len(P_coeffs):
            Pi = P_coeffs[i]
            for u in range(N):
                for k, val in enumerate(Pi[u][r]):
                    if val:
                        d = row(u, s, k + j)
                        d[col] = d.get(col, zero) + val
        if j == i:
            ff = falling_factorial(n, i)
            if ff:
                P0 = P_coeffs[0]
                for v in range(N):
                    for k, val in enumerate(P0[s][v]):
                        if val:
                            d = row(r, v, k)
                            d[col] = d.get(col, zero) - val * ff
    return list(rows.values())


def _specialized_coeffs(P: MatPoly, order: int, beta0):
    out = []
    D = P
    for i in range(order + 1):
        if i:
            D = D.derivative()
        out.append([[[to_fmpq(c.subs_beta(beta0)) for c in D[u, r].coeffs] for r in range(D.n)]
                    for u in range(D.n)])
    return out


def _symbolic_coeffs(P: MatPoly, order: int):
    out = []
    D = P
    for i in range(order + 1):
        if i:
            D = D.derivative()
        out.append([[list(D[u, r].coeffs) for r in range(D.n)] for u in range(D.n)])
    return out


def _nullspace_fmpq(rows, ncols):
    M = flint.fmpq_mat(len(rows), ncols)
    for r, d in enumerate(rows):
        for col, val in d.items():
            M[r, col] = val
    R, rank = M.rref()
    pivots = []
    for r in range(rank):
        pivots.append(next(j for j in range(ncols) if R[r, j] != 0))
    free = [j for j in range(ncols) if j not in set(pivots)]
    basis = []
    for f in free:
        v = [ZERO] * ncols
        v[f] = ONE
        for r, p in enumerate(pivots):
            if R[r, f] != 0:
                v[p] = Scalar(-R[r, f])
        basis.append(v)
    return basis


def _nullspace_exact(rows, ncols):
    dense = [[d.get(j, ZERO) for j in range(ncols)] for d in rows]
    return linalg.nullspace(dense, ncols)


def _is_eigen(D: DiffOp, P: MatPoly, n: int) -> bool:
    from .diffop import apply_right

    lam = eigenvalue_formula(D, n)
    return apply_right(P, D) == const(lam) * P


def _flatten(D: DiffOp, order: int):
    vec = []
    for i in range(order + 1):
        F = D.coeff(i)
        for r in range(D.n):
            for s in range(D.n):
                e = F[r, s]
                vec.extend(e.coeff(j) for j in range(i + 1))
    return vec


def _row_basis(ops, order):
    if not ops:
        return []
    rows = [_flatten(D, order) for D in ops]
    R, _ = linalg.rref(rows, len(rows[0]))
    N = ops[0].n
    out = []
    for r in R:
        pos = 0
        grid = []
        for i in range(order + 1):
            rows_i = []
            for _r in range(N):
                cols = []
                for _s in range(N):
                    cols.append(Poly(r[pos:pos + i + 1]))
                    pos += i + 1
                rows_i.append(cols)
            grid.append(MatPoly(rows_i))
        out.append(DiffOp(grid, N))
    return out


def solve_DW_detailed(order: int, W: WeightSpec, n_fit: int | None = None,
                      n_check: int | None = None, exact: bool = False,
                      seed: int = 0) -> SolveResult:
    """Find every operator of order ``<= order`` in D(W) and a real W-symmetric basis.

    The unknowns are the constant matrices ``F_j^i`` (``j <= i``).  The
    equations ``P_n . D = (sum_i [n]_i F_i^i) P_n`` for ``n <= n_fit`` are
    linear.  By default they are solved after specializing ``beta`` to a
    rational sample and every solution is then re-verified exactly with
    symbolic ``beta`` for all ``n <= n_check``.  Specializing can only shrink
    the rank, so once the sampled kernel verifies symbolically it is the full
    kernel.  ``exact=True`` eliminates over ``Q(beta)`` directly.
    """
    if order < 0:
        raise ValueError("order must be non-negative")
    n_fit = 2 * order + 2 if n_fit is None else n_fit
    n_check = 4 * order + 4 if n_check is None else n_check
    if n_fit < 2 * order + 2 or n_check <= n_fit:
        raise ValueError("need n_fit >= 2*order + 2 and n_check > n_fit")
    N = W.n
    monic = monic_sequence(W, n_check)
    ncols = len(_unknowns(order, N))
    beta0 = None
    method = "exact"
    if not exact:
        rng = random.Random(seed)
        beta0 = Fraction(rng.randint(2, 97), rng.randint(101, 997))
        rows = []
        for n in range(n_fit + 1):
            rows += _equation_rows(_specialized_coeffs(monic[n], order, beta0), n, order, N,
                                   flint.fmpq(0))
        kernel = _nullspace_fmpq(rows, ncols)
        cands = [_operator_from_vector(v, order, N) for v in kernel]
        if all(_is_eigen(D, monic[n], n) for D in cands for n in range(n_fit + 1)):
            method = "sampled"
        else:
            cands = None
    if method == "exact":
        rows = []
        for n in range(n_fit + 1):
            rows += _equation_rows(_symbolic_coeffs(monic[n], order), n, order, N, ZERO)
        kernel = _nullspace_exact(rows, ncols)
        cands = [_operator_from_vector(v, order, N) for v in kernel]
    for D in cands:
        for n in range(n_fit + 1, n_check + 1):
            if not _is_eigen(D, monic[n], n):
                raise SolverVerificationError(
                    f"solution fails the eigen-equation at n={n}; raise n_fit")
    sym, anti = [], []
    for D in cands:
        Dd = formal_W_adjoint(D, W)
        sym.append((D + Dd) * Fraction(1, 2))
        anti.append((D - Dd) * Fraction(1, 2))
    basis = _row_basis([S for S in sym if not S.is_zero()], order)
    anti_rank = len(_row_basis([A for A in anti if not A.is_zero()], order))
    for S in basis:
        if not is_w_symmetric(S, W):
            raise InconsistencyError("symmetrized solution is not W-symmetric")
    return SolveResult(order, basis, len(cands), anti_rank, n_fit, n_check, method, beta0)


def solve_DW(order: int, W: WeightSpec, n_fit: int | None = None, n_check: int | None = None,
             exact: bool = False) -> list[DiffOp]:
    return solve_DW_detailed(order, W, n_fit, n_check, exact).basis


def span_contains(basis, ops, order) -> bool:
    """Every operator in ``ops`` lies in the span of ``basis``."""
    base = linalg.rank([_flatten(D, order) for D in basis]) if basis else 0
    ext = linalg.rank([_flatten(D, order) for D in list(basis) + list(ops)])
    return base == ext


def same_span(A, B, order) -> bool:
    return span_contains(A, B, order) and span_contains(B, A, order)


# -- non-fullness certificate -------------------------------------------------

def _slot_matrix(elements, g, slot, length):
    cols = []
    for m in elements:
        L = eigenvalue_poly(m, g)
        cols.append([L[slot, slot].coeff(k) for k in range(length)])
    return [[cols[c][r] for c in range(len(cols))] for r in range(length)]


def orthogonal_triple_search(g: GeneratorSet, degree_bound: int) -> dict:
    """Decide whether three nonzero, pairwise annihilating module elements exist.

    Works on eigenvalue polynomials: ``E_i E_j = 0`` iff
    ``Lambda_n(E_i) Lambda_n(E_j) = 0`` for every ``n``.  When all eigenvalue
    matrices are upper triangular, the diagonal of a product is the product
    of diagonals, and ``Q[n]`` has no zero divisors, so each diagonal slot can
    be nonzero on at most one of the ``E_i``.
    """
    if degree_bound < 1:
        raise ValueError("degree_bound must be >= 1")
    d = degree_bound
    t = lambda k: Poly([0] * k + [1])
    elements = [ModuleElement(t(k), Poly()) for k in range(d + 1)] + \
               [ModuleElement(Poly(), t(k)) for k in range(d + 1)]
    nunk = len(elements)
    trace = []
    lams = [eigenvalue_poly(m, g) for m in elements]
    triangular = all(L[i, j].is_zero() for L in lams for i in range(3) for j in range(i))
    trace.append({
        "step": "triangularity",
        "claim": "Lambda_n(E) is upper triangular for every E = p(D1) + q(D1) D2",
        "holds": triangular,
    })
    if not triangular:
        raise InconsistencyError("eigenvalue matrices are not triangular; slot argument unavailable")
    length = max(L[i, i].degree for L in lams for i in range(3)) + 1
    slot_mats = [_slot_matrix(elements, g, s, length) for s in range(3)]
    kernels = [linalg.nullspace(M, nunk) for M in slot_mats]
    ranks = [linalg.rank(M, nunk) for M in slot_mats]
    for s in range(3):
        trace.append({
            "step": "slot",
            "slot": s + 1,
            "diagonal_entry": f"Lambda_n(E)[{s + 1},{s + 1}] = sum_k u_k sigma_k(n)",
            "rank": ranks[s],
            "kernel_dimension": len(kernels[s]),
        })
    stacked = [row for M in slot_mats for row in M]
    common = linalg.nullspace(stacked, nunk)
    trace.append({
        "step": "faithfulness",
        "claim": "an element with all diagonal slots identically zero is zero",
        "common_kernel_dimension": len(common),
    })
    if common:
        raise InconsistencyError("a nonzero module element has vanishing diagonal eigenvalues")
    classes: list[list[int]] = []
    for s in range(3):
        for cl in classes:
            r0 = ranks[cl[0]]
            if ranks[s] == r0 and linalg.rank(slot_mats[s] + slot_mats[cl[0]], nunk) == r0:
                cl.append(s)
                break
        else:
            classes.append([s])
    trace.append({
        "step": "slot_classes",
        "claim": "slots in one class vanish on exactly the same elements",
        "classes": [[s + 1 for s in cl] for cl in classes],
    })
    if len(classes) < 3:
        trace.append({
            "step": "pigeonhole",
            "claim": (
                "E_i E_j = 0 forces sigma_s(E_i) sigma_s(E_j) = 0 in Q[n] for each slot s, "
                "so each slot class is nonzero on at most one E_i; every nonzero E_i is nonzero "
                f"on some class; {len(classes)} classes cannot serve 3 nonzero elements"
            ),
            "conclusion": "no triple",
        })
        return {
            "result": "no_triple",
            "degree_bound": d,
            "trace": trace,
            "pairs": [_pair_record(pair, g) for pair in zero_divisor_pairs(g)],
        }
    triple = _try_triple(elements, kernels, classes, g)
    if triple is not None:
        raise InconsistencyError(f"pairwise annihilating triple found: {triple}")
    trace.append({"step": "construction", "conclusion": "no triple"})
    return {"result": "no_triple", "degree_bound": d, "trace": trace,
            "pairs": [_pair_record(pair, g) for pair in zero_divisor_pairs(g)]}


def _try_triple(elements, kernels, classes, g):
    picks = []
    for cl in classes:
        others = [s for c2 in classes if c2 is not cl for s in c2]
        rows = []
        for s in others:
            rows += [[v[k] for v in kernels[s]] for k in range(len(elements))]
        # elements vanishing on every other class
        basis = None
        for s in others:
            basis = kernels[s] if basis is None else _intersect(basis, kernels[s], len(elements))
        if not basis:
            return None
        v = basis[0]
        picks.append(ModuleElement(
            sum((elements[k].p * v[k] for k in range(len(elements))), Poly()),
            sum((elements[k].q * v[k] for k in range(len(elements))), Poly())))
    for i in range(len(picks)):
        for j in range(len(picks)):
            if i != j and not (eigenvalue_poly(picks[i], g) * eigenvalue_poly(picks[j], g)).is_zero():
                return None
    return picks[:3]


def _intersect(A, B, n):
    if not A or not B:
        return []
    # v = sum a_i A_i = sum b_j B_j
    rows = [[A[i][k] for i in range(len(A))] + [-B[j][k] for j in range(len(B))] for k in range(n)]
    sol = linalg.nullspace(rows, len(A) + len(B))
    return [[sum((s[i] * A[i][k] for i in range(len(A))), ZERO) for k in range(n)] for s in sol]


def zero_divisor_pairs(g: GeneratorSet) -> list[tuple[ModuleElement, ModuleElement]]:
    """``u = D1 - D2`` and ``v = D2 - mu I`` with ``u v = 0``, plus ``(D1 u, v)``."""
    t = Poly.x()
    u = ModuleElement(t, Poly.const(-1))
    v = ModuleElement(Poly.const(-g.mu), Poly.const(1))
    u2 = ModuleElement(t * t, t * -1)
    return [(u, v), (u2, v)]


def _pair_record(pair, g):
    E1, E2 = (module_to_operator(m, g) for m in pair)
    return {
        "E1": str(pair[0]),
        "E2": str(pair[1]),
        "E1_nonzero": not E1.is_zero(),
        "E2_nonzero": not E2.is_zero(),
        "E1E2_zero": (E1 * E2).is_zero(),
        "E2E1_zero": (E2 * E1).is_zero(),
    }
