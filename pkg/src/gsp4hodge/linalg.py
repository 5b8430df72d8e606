"""Exact dense linear algebra over a field of scalars.

Works uniformly over ``fractions.Fraction`` and :class:`~gsp4hodge.scalars.RatFunc`
entries.  Matrices are lists of row lists; vectors are row tuples.  Raw ints
in input are coerced to the ambient field so that division never leaves it.
"""

from __future__ import annotations

from fractions import Fraction as Q

from .scalars import RatFunc


def coerce_rows(rows):
    """Coerce every entry to one field: RatFunc if any entry is one, else Q."""
    rows = [list(r) for r in rows]
    symbolic = any(isinstance(x, RatFunc) for r in rows for x in r)
    if symbolic:
        conv = lambda x: x if isinstance(x, RatFunc) else RatFunc.const(x)
    else:
        conv = Q
    return [[conv(x) for x in r] for r in rows]


def zeros(n: int, m: int):
    return [[Q(0)] * m for _ in range(n)]


def identity(n: int):
    out = zeros(n, n)
    for i in range(n):
        out[i][i] = Q(1)
    return out


def mat_mul(A, B):
    n, k, m = len(A), len(B), len(B[0])
    out = [[None] * m for _ in range(n)]
    for i in range(n):
        for j in range(m):
            acc = A[i][0] * B[0][j]
            for t in range(1, k):
                acc = acc + A[i][t] * B[t][j]
            out[i][j] = acc
    return out


def mat_add(A, B):
    return [[A[i][j] + B[i][j] for j in range(len(A[0]))] for i in range(len(A))]


def mat_sub(A, B):
    return [[A[i][j] - B[i][j] for j in range(len(A[0]))] for i in range(len(A))]


def mat_scale(A, c):
    return [[c * x for x in row] for row in A]


def transpose(A):
    return [list(col) for col in zip(*A)]


def trace(A):
    acc = A[0][0]
    for i in range(1, len(A)):
        acc = acc + A[i][i]
    return acc


def mat_eq(A, B) -> bool:
    return len(A) == len(B) and all(
        len(ra) == len(rb) and all(x == y for x, y in zip(ra, rb))
        for ra, rb in zip(A, B)
    )


def rref(rows):
    """Reduced row echelon form.  Returns (new_rows, pivot_columns)."""
    rows = [list(r) for r in rows]
    if not rows:
        return rows, []
    n, m = len(rows), len(rows[0])
    pivots = []
    r = 0
    for c in range(m):
        pr = next((i for i in range(r, n) if rows[i][c]), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        piv = rows[r][c]
        if piv != 1:
            rows[r] = [x / piv for x in rows[r]]
        for i in range(n):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == n:
            break
    return rows, pivots


def row_space(rows):
    """Canonical (RREF, zero rows dropped) basis of the span of the rows."""
    red, pivots = rref(coerce_rows(rows))
    return [tuple(red[i]) for i in range(len(pivots))]


def rank(rows) -> int:
    return len(rref(coerce_rows(rows))[1])


def nullspace(rows, ncols: int | None = None):
    """RREF basis of the right null space {x : A x = 0}, as row tuples."""
    rows = coerce_rows(rows)
    if not rows:
        if ncols is None:
            raise ValueError("ncols required for empty matrix")
        return [tuple(identity(ncols)[i]) for i in range(ncols)]
    m = len(rows[0])
    red, pivots = rref(rows)
    free = [c for c in range(m) if c not in pivots]
    basis = []
    for fc in free:
        v = [Q(0)] * m
        v[fc] = Q(1)
        for row, pc in zip(red, pivots):
            v[pc] = -row[fc]
        basis.append(tuple(v))
    return row_space(basis)


def intersect_row_spaces(U, V, ncols: int):
    """Canonical basis of rowspace(U) ∩ rowspace(V) inside E^ncols."""
    if not U or not V:
        return []
    annU = nullspace(U, ncols)
    annV = nullspace(V, ncols)
    return nullspace(list(annU) + list(annV), ncols)


def inverse(A):
    n = len(A)
    aug = [list(A[i]) + identity(n)[i] for i in range(n)]
    red, pivots = rref(coerce_rows(aug))
    if pivots[:n] != list(range(n)):
        raise ValueError("matrix is singular")
    return [row[n:] for row in red[:n]]


def det(A):
    """Determinant via Gaussian elimination with exact division."""
    n = len(A)
    M = [list(r) for r in coerce_rows(A)]
    d = M[0][0] - M[0][0] + 1  # one of the ambient field
    sign = 1
    for c in range(n):
        pr = next((i for i in range(c, n) if M[i][c]), None)
        if pr is None:
            return d * 0
        if pr != c:
            M[c], M[pr] = M[pr], M[c]
            sign = -sign
        piv = M[c][c]
        d = d * piv
        for i in range(c + 1, n):
            if M[i][c]:
                f = M[i][c] / piv
                M[i] = [x - f * y for x, y in zip(M[i], M[c])]
    return d * sign
