"""Row reduction and small matrix algebra over GF(q), on integer codes.

Vectors are tuples of field codes; matrices are tuples of row vectors.
"""

from __future__ import annotations


def normalize(vec, F):
    """Scale ``vec`` so its first nonzero entry is 1.  Zero vectors are returned as-is."""
    for c in vec:
        if c:
            if c == 1:
                return tuple(vec)
            s = F.inv_table[c]
            M = F.mul_table[s]
            return tuple(M[x] for x in vec)
    return tuple(vec)


def rref(rows, F, ncols=None):
    """Reduced row-echelon form: leading ones, pivot columns cleared, zero rows dropped.

    Returns ``(rows, pivots)``; both are tuples, rows sorted by pivot column.
    """
    A, M, N, I = F.add_table, F.mul_table, F.neg_table, F.inv_table
    R = [list(r) for r in rows]
    if ncols is None:
        ncols = len(R[0]) if R else 0
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(R)) if R[i][c]), None)
        if piv is None:
            continue
        R[r], R[piv] = R[piv], R[r]
        s = I[R[r][c]]
        if s != 1:
            R[r] = [M[s][x] for x in R[r]]
        row = R[r]
        for i in range(len(R)):
            if i != r and R[i][c]:
                f = N[R[i][c]]
                Mf = M[f]
                R[i] = [A[x][Mf[y]] for x, y in zip(R[i], row)]
        pivots.append(c)
        r += 1
        if r == len(R):
            break
    return tuple(tuple(x) for x in R[:r]), tuple(pivots)


def rank(rows, F):
    return len(rref(rows, F)[0]) if rows else 0


def nullspace(rows, F, ncols):
    """Basis (in RREF) of {x : row . x = 0 for every row}, using the dot pairing."""
    R, pivots = rref(rows, F, ncols) if rows else ((), ())
    free = [c for c in range(ncols) if c not in pivots]
    N = F.neg_table
    basis = []
    for fcol in free:
        v = [0] * ncols
        v[fcol] = 1
        for row, pc in zip(R, pivots):
            v[pc] = N[row[fcol]]
        basis.append(tuple(v))
    return rref(basis, F, ncols)[0] if basis else ()


def dot(u, v, F):
    A, M = F.add_table, F.mul_table
    s = 0
    for x, y in zip(u, v):
        if x and y:
            s = A[s][M[x][y]]
    return s


def vec_mat(v, mat, F):
    """Row vector times matrix."""
    A, M = F.add_table, F.mul_table
    ncols = len(mat[0])
    out = [0] * ncols
    for x, row in zip(v, mat):
        if x:
            Mx = M[x]
            out = [A[o][Mx[y]] for o, y in zip(out, row)]
    return tuple(out)


def mat_mul(a, b, F):
    return tuple(vec_mat(row, b, F) for row in a)


def identity(n):
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def transpose(mat):
    return tuple(zip(*mat))


def mat_inv(mat, F):
    n = len(mat)
    aug = [tuple(row) + e for row, e in zip(mat, identity(n))]
    R, pivots = rref(aug, F, n)
    if len(R) < n or pivots != tuple(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return tuple(row[n:] for row in R)


def is_invertible(mat, F):
    return rank(mat, F) == len(mat)


def det(mat, F):
    """Determinant by elimination."""
    A, M, N, I = F.add_table, F.mul_table, F.neg_table, F.inv_table
    R = [list(r) for r in mat]
    n = len(R)
    d = 1
    for c in range(n):
        piv = next((i for i in range(c, n) if R[i][c]), None)
        if piv is None:
            return 0
        if piv != c:
            R[c], R[piv] = R[piv], R[c]
            d = N[d]
        d = M[d][R[c][c]]
        s = I[R[c][c]]
        for i in range(c + 1, n):
            if R[i][c]:
                f = N[M[R[i][c]][s]]
                R[i] = [A[x][M[f][y]] for x, y in zip(R[i], R[c])]
    return d


def frob_vec(v, F, j):
    if j % F.m == 0:
        return tuple(v)
    t = F.frobenius_table(j)
    return tuple(t[x] for x in v)


def frob_mat(mat, F, j):
    return tuple(frob_vec(r, F, j) for r in mat)
