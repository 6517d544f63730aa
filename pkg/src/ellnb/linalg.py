"""Gauss-Jordan elimination over a finite field, on raw values."""

from __future__ import annotations

from .errors import NotABasis


def rank(F, rows) -> int:
    m = [list(r) for r in rows]
    r = 0
    ncols = len(m[0]) if m else 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][col] != F.zero), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = F.inv(m[r][col])
        m[r] = [F.mul(inv, c) for c in m[r]]
        for i in range(len(m)):
            if i != r and m[i][col] != F.zero:
                f = m[i][col]
                m[i] = [F.sub(a, F.mul(f, b)) for a, b in zip(m[i], m[r])]
        r += 1
    return r


def inverse(F, matrix):
    """Inverse of a square matrix given as a list of rows."""
    n = len(matrix)
    m = [list(row) + [F.one if i == j else F.zero for j in range(n)] for i, row in enumerate(matrix)]
    for col in range(n):
        piv = next((i for i in range(col, n) if m[i][col] != F.zero), None)
        if piv is None:
            raise NotABasis("matrix is singular")
        m[col], m[piv] = m[piv], m[col]
        inv = F.inv(m[col][col])
        m[col] = [F.mul(inv, c) for c in m[col]]
        for i in range(n):
            if i != col and m[i][col] != F.zero:
                f = m[i][col]
                m[i] = [F.sub(a, F.mul(f, b)) for a, b in zip(m[i], m[col])]
    return [row[n:] for row in m]


def vec_mat(F, v, matrix):
    """Row vector times matrix."""
    ncols = len(matrix[0])
    out = [F.zero] * ncols
    for c, row in zip(v, matrix):
        if c == F.zero:
            continue
        for j in range(ncols):
            out[j] = F.add(out[j], F.mul(c, row[j]))
    return out
