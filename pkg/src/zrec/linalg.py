"""Exact dense linear algebra over QQ and GF(p).

Over QQ the elimination is fraction-free (Bareiss): rows are first scaled
to integers, so intermediate entries stay minors of the input.  Over GF(p)
ordinary elimination is used.
"""
from fractions import Fraction
from math import lcm

from .field import QQ


def _int_rows(M):
    out = []
    scales = []
    for row in M:
        den = 1
        for x in row:
            den = lcm(den, Fraction(x).denominator)
        out.append([int(Fraction(x) * den) for x in row])
        scales.append(den)
    return out, scales


def bareiss_echelon(M, ncols=None):
    """Fraction-free row echelon form of an integer matrix.

    Returns ``(E, pivots, sign)``; ``sign`` tracks row swaps.
    """
    M = [list(r) for r in M]
    m = len(M)
    n = ncols if ncols is not None else (len(M[0]) if M else 0)
    prev = 1
    r = 0
    sign = 1
    pivots = []
    for c in range(n):
        if r == m:
            break
        p = next((i for i in range(r, m) if M[i][c] != 0), None)
        if p is None:
            continue
        if p != r:
            M[r], M[p] = M[p], M[r]
            sign = -sign
        piv = M[r][c]
        for i in range(r + 1, m):
            mic = M[i][c]
            row_i = M[i]
            row_r = M[r]
            for j in range(c + 1, n):
                row_i[j] = (piv * row_i[j] - mic * row_r[j]) // prev
            row_i[c] = 0
        prev = piv
        pivots.append(c)
        r += 1
    return M, pivots, sign


def _plain_echelon(M, ncols, field):
    M = [list(r) for r in M]
    m = len(M)
    r = 0
    sign = 1
    pivots = []
    for c in range(ncols):
        if r == m:
            break
        p = next((i for i in range(r, m) if M[i][c]), None)
        if p is None:
            continue
        if p != r:
            M[r], M[p] = M[p], M[r]
            sign = -sign
        inv = field.one / M[r][c]
        for i in range(r + 1, m):
            f = M[i][c] * inv
            if f:
                ri, rr = M[i], M[r]
                for j in range(c, ncols):
                    ri[j] = ri[j] - f * rr[j]
        pivots.append(c)
        r += 1
    return M, pivots, sign


def det(M, field=QQ):
    n = len(M)
    if n == 0:
        return field.one
    if field is QQ or field == QQ:
        ints, scales = _int_rows(M)
        E, piv, sign = bareiss_echelon(ints, n)
        if len(piv) < n:
            return Fraction(0)
        s = 1
        for x in scales:
            s *= x
        return Fraction(sign * E[n - 1][n - 1], s)
    E, piv, sign = _plain_echelon(M, n, field)
    if len(piv) < n:
        return field.zero
    out = field.one * sign
    for i in range(n):
        out = out * E[i][i]
    return out


def rref(M, ncols, field=QQ):
    """Reduced row echelon form: ``(rows, pivot_columns)``, zero rows dropped."""
    if not M:
        return [], []
    if field is QQ or field == QQ:
        ints, _ = _int_rows(M)
        E, piv, _ = bareiss_echelon(ints, ncols)
        R = [[Fraction(x) for x in E[i]] for i in range(len(piv))]
    else:
        E, piv, _ = _plain_echelon(M, ncols, field)
        R = [list(E[i]) for i in range(len(piv))]
    for i in range(len(piv) - 1, -1, -1):
        c = piv[i]
        inv = field.one / R[i][c]
        R[i] = [x * inv for x in R[i]]
        for k in range(i):
            f = R[k][c]
            if f:
                R[k] = [x - f * y for x, y in zip(R[k], R[i])]
    return R, piv


def rank(M, ncols=None, field=QQ):
    if not M:
        return 0
    n = ncols if ncols is not None else len(M[0])
    if field is QQ or field == QQ:
        ints, _ = _int_rows(M)
        return len(bareiss_echelon(ints, n)[1])
    return len(_plain_echelon(M, n, field)[1])


def nullspace(M, ncols, field=QQ):
    """Basis (list of vectors) of {x : M x = 0}."""
    R, piv = rref(M, ncols, field)
    free = [c for c in range(ncols) if c not in set(piv)]
    basis = []
    for f in free:
        v = [field.zero] * ncols
        v[f] = field.one
        for i, c in enumerate(piv):
            v[c] = -R[i][f]
        basis.append(v)
    return basis


def left_nullspace(M, field=QQ):
    """Basis of {y : y M = 0} for an m x n matrix M given as rows."""
    if not M:
        return []
    m = len(M)
    n = len(M[0])
    T = [[M[i][j] for i in range(m)] for j in range(n)]
    return nullspace(T, m, field)


def column_echelon(vectors, n, field=QQ):
    """Reduced column echelon basis of the span of ``vectors`` (each length n).

    Returned as a list of column vectors; reading the columns side by side
    gives a matrix whose transpose is in reduced row echelon form.
    """
    R, _ = rref([list(v) for v in vectors], n, field)
    return R


def same_span(U, V, n, field=QQ):
    return column_echelon(U, n, field) == column_echelon(V, n, field)


def matmul(A, B, field=QQ):
    if not A:
        return []
    k = len(B)
    n = len(B[0]) if B else 0
    out = []
    for row in A:
        r = []
        for j in range(n):
            s = field.zero
            for t in range(k):
                if row[t]:
                    s = s + row[t] * B[t][j]
            r.append(s)
        out.append(r)
    return out


def solve_square(A, y, field=QQ):
    """Unique solution of A x = y for square invertible A."""
    n = len(A)
    aug = [list(A[i]) + [y[i]] for i in range(n)]
    R, piv = rref(aug, n + 1, field)
    if piv != list(range(n)):
        raise ZeroDivisionError("singular system")
    return [R[i][n] for i in range(n)]
