"""Small exact matrix helpers over a coefficient field."""

from __future__ import annotations

from .errors import Singular


def identity(f, n):
    return [[f.one if i == j else f.zero for j in range(n)] for i in range(n)]


def mat_mul(f, a, b):
    n = len(a)
    m = len(b[0]) if b else 0
    k = len(b)
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            acc = f.zero
            for t in range(k):
                x = a[i][t]
                y = b[t][j]
                if not (f.is_zero(x) or f.is_zero(y)):
                    acc = f.add(acc, f.mul(x, y))
            row.append(acc)
        out.append(row)
    return out


def det(f, mat):
    """Exact determinant by Gaussian elimination with row swaps."""
    n = len(mat)
    a = [list(row) for row in mat]
    sign_flip = False
    result = f.one
    for c in range(n):
        piv = None
        for i in range(c, n):
            if not f.is_zero(a[i][c]):
                piv = i
                break
        if piv is None:
            return f.zero
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            sign_flip = not sign_flip
        result = f.mul(result, a[c][c])
        inv = f.inv(a[c][c])
        for i in range(c + 1, n):
            if not f.is_zero(a[i][c]):
                factor = f.mul(a[i][c], inv)
                a[i] = [f.sub(x, f.mul(factor, y)) for x, y in zip(a[i], a[c])]
    if sign_flip:
        result = f.neg(result)
    return result


def inverse(f, mat):
    n = len(mat)
    a = [list(row) + list(idrow) for row, idrow in zip(mat, identity(f, n))]
    for c in range(n):
        piv = None
        for i in range(c, n):
            if not f.is_zero(a[i][c]):
                piv = i
                break
        if piv is None:
            raise Singular("matrix over the coefficient field is singular")
        a[c], a[piv] = a[piv], a[c]
        inv = f.inv(a[c][c])
        a[c] = [f.mul(inv, x) for x in a[c]]
        for i in range(n):
            if i != c and not f.is_zero(a[i][c]):
                factor = a[i][c]
                a[i] = [f.sub(x, f.mul(factor, y)) for x, y in zip(a[i], a[c])]
    return [row[n:] for row in a]


def gauss_to_diagonal(f, mat):
    """Reduce an invertible matrix to diagonal form by row additions only.

    Returns (ops, diag) where ops is the list of (i, j, x) operations
    row_i += x * row_j applied in order; no swaps and no scalings are used,
    so each op is left multiplication by the elementary matrix e_ij(x).
    """
    n = len(mat)
    a = [list(row) for row in mat]
    ops = []

    def apply(i, j, x):
        a[i] = [f.add(p, f.mul(x, q)) for p, q in zip(a[i], a[j])]
        ops.append((i, j, x))

    for c in range(n):
        if f.is_zero(a[c][c]):
            src = None
            for i in range(c + 1, n):
                if not f.is_zero(a[i][c]):
                    src = i
                    break
            if src is None:
                raise Singular("matrix over the coefficient field is singular")
            apply(c, src, f.one)
        inv = f.inv(a[c][c])
        for i in range(c + 1, n):
            if not f.is_zero(a[i][c]):
                apply(i, c, f.neg(f.mul(a[i][c], inv)))
    for c in range(n - 1, -1, -1):
        inv = f.inv(a[c][c])
        for i in range(c - 1, -1, -1):
            if not f.is_zero(a[i][c]):
                apply(i, c, f.neg(f.mul(a[i][c], inv)))
    return ops, [a[i][i] for i in range(n)]


def diagonal_transfer_factors(f, diag):
    """Write diag(d_1..d_r) as a product of elementaries times diag(1,..,1,c).

    Returns (factors, c) with c = d_1 * ... * d_r and factors a list of
    (i, j, x) elementary data whose ordered product times D_r(c) equals the
    diagonal matrix.  Uses diag(u, u^-1) = w(u) w(-1) with
    w(u) = e_01(u) e_10(-u^-1) e_01(u) in each adjacent pair of slots.
    """
    r = len(diag)
    factors = []
    c = f.one
    prefix = f.one
    for t in range(r - 1):
        prefix = f.mul(prefix, diag[t])
        u = prefix
        u_inv = f.inv(u)
        factors.extend(
            [
                (t, t + 1, u),
                (t + 1, t, f.neg(u_inv)),
                (t, t + 1, u),
                (t, t + 1, f.minus_one),
                (t + 1, t, f.one),
                (t, t + 1, f.minus_one),
            ]
        )
    for d in diag:
        c = f.mul(c, d)
    return factors, c
