"""Dense exact linear algebra on nested lists over any exact field.

Entries only need ``+ - * /`` and a zero test via ``bool``; this covers
:class:`Scalar`, ``Fraction`` and ``flint.fmpq``.
"""
from __future__ import annotations

from .errors import SingularMatrix
from .scalar import ONE, ZERO


def identity(n, one=ONE, zero=ZERO):
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def zeros(n, m=None, zero=ZERO):
    return [[zero] * (n if m is None else m) for _ in range(n)]


def mat_mul(A, B):
    m = len(B)
    out = []
    for i in range(len(A)):
        row = []
        for j in range(len(B[0])):
            acc = A[i][0] * B[0][j]
            for k in range(1, m):
                acc = acc + A[i][k] * B[k][j]
            row.append(acc)
        out.append(row)
    return out


def mat_add(A, B):
    return [[a + b for a, b in zip(r, s)] for r, s in zip(A, B)]


def mat_sub(A, B):
    return [[a - b for a, b in zip(r, s)] for r, s in zip(A, B)]


def mat_scale(s, A):
    return [[s * a for a in r] for r in A]


def is_zero_matrix(A) -> bool:
    return all(not e for r in A for e in r)


def rref(rows, ncols=None):
    """Reduced row echelon form; returns ``(R, pivot_columns)``.

    Works on a copy.  Rows are reduced incrementally so long, mostly dependent
    systems stay cheap.
    """
    ncols = ncols if ncols is not None else (len(rows[0]) if rows else 0)
    basis: list[list] = []  # reduced rows, each with a leading 1
    pivots: list[int] = []
    for row in rows:
        r = list(row)
        for b, p in zip(basis, pivots):
            f = r[p]
            if f:
                r = [x - f * y for x, y in zip(r, b)]
        lead = next((j for j in range(ncols) if r[j]), None)
        if lead is None:
            continue
        inv = r[lead]
        r = [x / inv for x in r]
        # keep earlier rows reduced against the new pivot
        for k, b in enumerate(basis):
            f = b[lead]
            if f:
                basis[k] = [x - f * y for x, y in zip(b, r)]
        basis.append(r)
        pivots.append(lead)
    order = sorted(range(len(pivots)), key=lambda k: pivots[k])
    return [basis[k] for k in order], [pivots[k] for k in order]


def nullspace(rows, ncols, one=ONE, zero=ZERO):
    """Basis of ``{v : rows @ v = 0}`` read off the reduced echelon form."""
    R, pivots = rref(rows, ncols)
    free = [j for j in range(ncols) if j not in set(pivots)]
    out = []
    for f in free:
        v = [zero] * ncols
        v[f] = one
        for r, p in zip(R, pivots):
            v[p] = -r[f]
        out.append(v)
    return out


def rank(rows, ncols=None) -> int:
    return len(rref(rows, ncols)[1])


def mat_inv(A, one=ONE, zero=ZERO):
    """Gauss-Jordan inverse of a square matrix; raises :class:`SingularMatrix`."""
    n = len(A)
    M = [list(r) + [one if i == j else zero for j in range(n)] for i, r in enumerate(A)]
    for col in range(n):
        piv = next((r for r in range(col, n) if M[r][col]), None)
        if piv is None:
            raise SingularMatrix("matrix is singular")
        M[col], M[piv] = M[piv], M[col]
        inv = M[col][col]
        M[col] = [x / inv for x in M[col]]
        for r in range(n):
            if r != col and M[r][col]:
                f = M[r][col]
                M[r] = [x - f * y for x, y in zip(M[r], M[col])]
    return [r[n:] for r in M]


def mat_det(A):
    n = len(A)
    M = [list(r) for r in A]
    det = ONE
    for col in range(n):
        piv = next((r for r in range(col, n) if M[r][col]), None)
        if piv is None:
            return ZERO
        if piv != col:
            M[col], M[piv] = M[piv], M[col]
            det = -det
        det = det * M[col][col]
        for r in range(col + 1, n):
            if M[r][col]:
                f = M[r][col] / M[col][col]
                M[r] = [x - f * y for x, y in zip(M[r], M[col])]
    return det
