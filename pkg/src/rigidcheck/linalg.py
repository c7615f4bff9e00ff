"""Small exact linear algebra over a coefficient field (lists of lists)."""

from __future__ import annotations

from .errors import SingularMatrixError


def identity(field, n):
    return [[field.one if i == j else field.zero for j in range(n)] for i in range(n)]


def transpose(A):
    return [list(col) for col in zip(*A)]


def mat_mul(field, A, B):
    n, k, m = len(A), len(B), len(B[0])
    out = [[field.zero] * m for _ in range(n)]
    for i in range(n):
        Ai = A[i]
        for j in range(m):
            s = field.zero
            for t in range(k):
                s = field.add(s, field.mul(Ai[t], B[t][j]))
            out[i][j] = s
    return out


def mat_vec(field, A, v):
    return [
        _dot(field, row, v)
        for row in A
    ]


def _dot(field, row, v):
    s = field.zero
    for a, b in zip(row, v):
        s = field.add(s, field.mul(a, b))
    return s


def invert(field, A):
    """Gauss-Jordan inverse; raises SingularMatrixError when A is singular."""
    n = len(A)
    if any(len(row) != n for row in A):
        raise SingularMatrixError("matrix is not square")
    M = [list(row) + [field.one if i == j else field.zero for j in range(n)]
         for i, row in enumerate(A)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if M[r][col] != field.zero), None)
        if pivot is None:
            raise SingularMatrixError("matrix is singular")
        M[col], M[pivot] = M[pivot], M[col]
        inv_p = field.inv(M[col][col])
        M[col] = [field.mul(inv_p, x) for x in M[col]]
        for r in range(n):
            if r != col and M[r][col] != field.zero:
                factor = M[r][col]
                M[r] = [field.sub(x, field.mul(factor, y)) for x, y in zip(M[r], M[col])]
    return [row[n:] for row in M]


def rank(field, A):
    """Row rank by Gaussian elimination (A is not modified)."""
    if not A:
        return 0
    M = [list(row) for row in A]
    nrows, ncols = len(M), len(M[0])
    r = 0
    for col in range(ncols):
        pivot = next((i for i in range(r, nrows) if M[i][col] != field.zero), None)
        if pivot is None:
            continue
        M[r], M[pivot] = M[pivot], M[r]
        inv_p = field.inv(M[r][col])
        M[r] = [field.mul(inv_p, x) for x in M[r]]
        for i in range(nrows):
            if i != r and M[i][col] != field.zero:
                factor = M[i][col]
                M[i] = [field.sub(x, field.mul(factor, y)) for x, y in zip(M[i], M[r])]
        r += 1
        if r == nrows:
            break
    return r
