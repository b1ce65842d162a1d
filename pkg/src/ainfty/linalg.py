"""Dense exact linear algebra over a Field.

Matrices are lists of row lists of scalars.  Dimensions here are small
(a few hundred at most), so dense Gauss elimination is the right tool.
"""
from __future__ import annotations


def rref(field, mat):
    """Reduced row echelon form.  Returns (rows, pivot_columns)."""
    rows = [list(r) for r in mat]
    nrows = len(rows)
    ncols = len(rows[0]) if nrows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        pr = None
        for i in range(r, nrows):
            if not field.is_zero(rows[i][c]):
                pr = i
                break
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        inv = field.inv(rows[r][c])
        rows[r] = [field.mul(inv, x) for x in rows[r]]
        for i in range(nrows):
            if i != r and not field.is_zero(rows[i][c]):
                f = rows[i][c]
                rows[i] = [field.sub(x, field.mul(f, y)) for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return rows, pivots


def rank(field, mat):
    return len(rref(field, mat)[1])


def kernel_basis(field, mat, ncols=None):
    """Basis of the null space {x : mat·x = 0}, one vector per non-pivot column."""
    if ncols is None:
        ncols = len(mat[0]) if mat else 0
    if not mat:
        return [[field.one if j == i else field.zero for j in range(ncols)] for i in range(ncols)]
    rows, pivots = rref(field, mat)
    pivset = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivset:
            continue
        v = [field.zero] * ncols
        v[free] = field.one
        for r, pc in enumerate(pivots):
            v[pc] = field.neg(rows[r][free])
        basis.append(v)
    return basis


def solve(field, mat, rhs):
    """One solution x of mat·x = rhs, or None if inconsistent."""
    nrows = len(mat)
    ncols = len(mat[0]) if nrows else 0
    aug = [list(mat[i]) + [rhs[i]] for i in range(nrows)]
    rows, pivots = rref(field, aug)
    if ncols in pivots:
        return None
    x = [field.zero] * ncols
    for r, pc in enumerate(pivots):
        x[pc] = rows[r][ncols]
    return x


def invert(field, mat):
    n = len(mat)
    assert all(len(r) == n for r in mat), "invert needs a square matrix"
    aug = [list(mat[i]) + [field.one if j == i else field.zero for j in range(n)] for i in range(n)]
    rows, pivots = rref(field, aug)
    if pivots[:n] != list(range(n)):
        raise ValueError("matrix is singular")
    return [r[n:] for r in rows[:n]]
