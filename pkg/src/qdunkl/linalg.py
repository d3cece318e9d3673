"""Small exact vector and matrix helpers (row-vector convention)."""

from __future__ import annotations

from .algebra.scalars import rdiv


def dot(u, v):
    total = 0
    for a, b in zip(u, v):
        if a != 0 and b != 0:
            total = total + a * b
    return total


def vadd(u, v):
    return tuple(a + b for a, b in zip(u, v))


def vsub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def vscale(c, u):
    return tuple(c * a for a in u)


def identity(n):
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def matmul(a, b):
    n, m, p = len(a), len(b), len(b[0]) if b else 0
    out = []
    for i in range(n):
        row = a[i]
        out.append(
            tuple(dot(row, [b[k][j] for k in range(m)]) for j in range(p))
        )
    return tuple(out)


def vecmat(v, m):
    """Row vector times matrix: ``(v M)_k = sum_j v_j M[j][k]``."""
    n = len(m)
    return tuple(dot(v, [m[j][k] for j in range(n)]) for k in range(len(m[0])))


def transpose(m):
    return tuple(zip(*m))


def det(m):
    """Determinant by Gaussian elimination over the exact field."""
    a = [list(r) for r in m]
    n = len(a)
    d = 1
    for c in range(n):
        p = next((r for r in range(c, n) if a[r][c] != 0), None)
        if p is None:
            return 0
        if p != c:
            a[c], a[p] = a[p], a[c]
            d = -d
        d = d * a[c][c]
        for r in range(c + 1, n):
            if a[r][c] != 0:
                f = rdiv(a[r][c], a[c][c])
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return d


def rank(vectors):
    rows = [list(v) for v in vectors]
    if not rows:
        return 0
    n = len(rows[0])
    r = 0
    for c in range(n):
        p = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rdiv(rows[i][c], rows[r][c])
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        r += 1
    return r


def wedge2(u, v):
    """Components ``u_k v_l - u_l v_k`` for ``k < l``."""
    n = len(u)
    return {
        (k, l): u[k] * v[l] - u[l] * v[k]
        for k in range(n)
        for l in range(k + 1, n)
        if u[k] * v[l] - u[l] * v[k] != 0
    }
