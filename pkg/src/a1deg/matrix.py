"""Small exact matrix helpers over :class:`~a1deg.fields.FieldElement` entries.

Matrices are lists of row lists.  Everything is Gaussian elimination; the
sizes here never exceed a few dozen.
"""

from __future__ import annotations

from .errors import DivisionByZero


def identity(field, n):
    one, zero = field.one_element, field.zero_element
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def zeros(field, rows, cols=None):
    zero = field.zero_element
    return [[zero] * (rows if cols is None else cols) for _ in range(rows)]


def transpose(A):
    return [list(col) for col in zip(*A)]


def mat_mul(A, B):
    Bt = transpose(B)
    out = []
    for row in A:
        out_row = []
        for col in Bt:
            acc = None
            for a, b in zip(row, col):
                if a.is_zero() or b.is_zero():
                    continue
                acc = a * b if acc is None else acc + a * b
            out_row.append(acc if acc is not None else row[0].field.zero_element)
        out.append(out_row)
    return out


def congruence(P, G):
    """``P^T G P``."""
    return mat_mul(mat_mul(transpose(P), G), P)


def is_symmetric(A) -> bool:
    n = len(A)
    return all(len(r) == n for r in A) and all(A[i][j] == A[j][i] for i in range(n) for j in range(i))


def _echelon(A):
    """Row-reduce a copy of ``A``; return (reduced rows, pivot columns, swap parity)."""
    M = [list(r) for r in A]
    rows = len(M)
    cols = len(M[0]) if rows else 0
    pivots, r, swaps = [], 0, 0
    for c in range(cols):
        p = next((i for i in range(r, rows) if not M[i][c].is_zero()), None)
        if p is None:
            continue
        if p != r:
            M[r], M[p] = M[p], M[r]
            swaps += 1
        inv = M[r][c].inverse()
        for i in range(r + 1, rows):
            if not M[i][c].is_zero():
                f = M[i][c] * inv
                M[i] = [x - f * y for x, y in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return M, pivots, swaps


def det(A):
    n = len(A)
    if n == 0:
        raise ValueError("determinant of an empty matrix")
    M, pivots, swaps = _echelon(A)
    if len(pivots) < n:
        return A[0][0].field.zero_element
    acc = M[0][0]
    for i in range(1, n):
        acc = acc * M[i][i]
    return -acc if swaps % 2 else acc


def rank(A) -> int:
    if not A:
        return 0
    return len(_echelon(A)[1])


def inverse(A):
    n = len(A)
    F = A[0][0].field
    M = [list(r) + e for r, e in zip(A, identity(F, n))]
    for c in range(n):
        p = next((i for i in range(c, n) if not M[i][c].is_zero()), None)
        if p is None:
            raise DivisionByZero("singular matrix")
        M[c], M[p] = M[p], M[c]
        inv = M[c][c].inverse()
        M[c] = [x * inv for x in M[c]]
        for i in range(n):
            if i != c and not M[i][c].is_zero():
                f = M[i][c]
                M[i] = [x - f * y for x, y in zip(M[i], M[c])]
    return [r[n:] for r in M]
