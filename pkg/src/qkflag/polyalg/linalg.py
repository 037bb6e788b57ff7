"""Exact dense linear algebra over fields and over integral domains."""

from __future__ import annotations


class SingularMatrixError(ArithmeticError):
    pass


def solve_field(A, B, zero, one):
    """Return X with ``A X = B`` by Gauss-Jordan over a field.

    ``A`` is n x n, ``B`` is n x m (lists of lists).  Raises
    :class:`SingularMatrixError` when A is singular.
    """
    n = len(A)
    m = len(B[0]) if B else 0
    M = [list(A[i]) + list(B[i]) for i in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if M[r][col]), None)
        if piv is None:
            raise SingularMatrixError(f"singular at column {col}")
        if piv != col:
            M[col], M[piv] = M[piv], M[col]
        inv = one / M[col][col]
        row = [x * inv if x else x for x in M[col]]
        M[col] = row
        for r in range(n):
            if r != col and M[r][col]:
                f = M[r][col]
                M[r] = [a - f * b if b else a for a, b in zip(M[r], row)]
    return [M[i][n:n + m] for i in range(n)]


def inverse_field(A, zero, one):
    n = len(A)
    eye = [[one if i == j else zero for j in range(n)] for i in range(n)]
    return solve_field(A, eye, zero, one)


def det_field(A, zero, one):
    n = len(A)
    M = [list(r) for r in A]
    det = one
    for col in range(n):
        piv = next((r for r in range(col, n) if M[r][col]), None)
        if piv is None:
            return zero
        if piv != col:
            M[col], M[piv] = M[piv], M[col]
            det = -det
        p = M[col][col]
        det = det * p
        for r in range(col + 1, n):
            if M[r][col]:
                f = M[r][col] / p
                M[r] = [a - f * b for a, b in zip(M[r], M[col])]
    return det


def solve_fraction_free(A, B, zero, one):
    """Bareiss elimination over an integral domain with exact division.

    Returns ``(X, det)`` with ``A X = det * B`` and ``det = det(A)``; every
    division performed is exact, so entries stay in the domain.
    """
    n = len(A)
    m = len(B[0]) if B else 0
    M = [list(A[i]) + list(B[i]) for i in range(n)]
    sign = 1
    prev = one
    for k in range(n):
        piv = next((r for r in range(k, n) if M[r][k]), None)
        if piv is None:
            raise SingularMatrixError(f"singular at column {k}")
        if piv != k:
            M[k], M[piv] = M[piv], M[k]
            sign = -sign
        pk = M[k][k]
        for i in range(k + 1, n):
            mik = M[i][k]
            row = M[i]
            for j in range(k + 1, n + m):
                v = row[j] * pk - mik * M[k][j]
                row[j] = v / prev if v and not _is_one(prev) else v
            row[k] = zero
        prev = pk
    det = M[n - 1][n - 1]
    X = [[zero] * m for _ in range(n)]
    for c in range(m):
        for i in range(n - 1, -1, -1):
            acc = det * M[i][n + c]
            for j in range(i + 1, n):
                if M[i][j] and X[j][c]:
                    acc = acc - M[i][j] * X[j][c]
            X[i][c] = acc / M[i][i] if acc else acc
    if sign < 0:
        det = -det
        X = [[-x for x in row] for row in X]
    return X, det


def _is_one(x):
    try:
        return x == 1
    except TypeError:
        return False


def matmul(A, B, zero):
    n, k, m = len(A), len(B), len(B[0]) if B else 0
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            acc = zero
            for t in range(k):
                a = A[i][t]
                if a:
                    b = B[t][j]
                    if b:
                        acc = acc + a * b
            row.append(acc)
        out.append(row)
    return out


def matvec(A, v, zero):
    return [r[0] for r in matmul(A, [[x] for x in v], zero)]
