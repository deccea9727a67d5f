"""Dense linear algebra over a FieldTower, on lists of int rows."""
from __future__ import annotations

import numpy as np

from .gf import FieldError, FieldTower


def rref(F: FieldTower, rows, ncols=None):
    """Reduced row-echelon form. Returns (nonzero rows, pivot columns)."""
    M = [list(r) for r in rows]
    if ncols is None:
        ncols = len(M[0]) if M else 0
    add, mul, neg, inv = F.add_l, F.mul_l, F.neg_l, F.inv_l
    pivots = []
    r = 0
    nrows = len(M)
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if M[i][c]), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        row = M[r]
        a = row[c]
        if a != 1:
            ia = inv[a]
            mrow = mul[ia]
            row = [mrow[x] for x in row]
            M[r] = row
        for i in range(nrows):
            if i != r:
                f = M[i][c]
                if f:
                    nf = mul[neg[f]]
                    Mi = M[i]
                    M[i] = [add[x][nf[y]] for x, y in zip(Mi, row)]
        pivots.append(c)
        r += 1
    return [tuple(M[i]) for i in range(r)], pivots


def rank(F, rows, ncols=None):
    return len(rref(F, rows, ncols)[0])


def nullspace(F, rows, ncols):
    """Basis of {x : M x = 0} (right kernel)."""
    R, pivots = rref(F, rows, ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [0] * ncols
        v[f] = 1
        for i, pc in enumerate(pivots):
            v[pc] = F.neg_l[R[i][f]]
        basis.append(tuple(v))
    return basis


def mat_mul(F, A, B):
    add, mul = F.add_l, F.mul_l
    Bt = list(zip(*B))
    out = []
    for row in A:
        out_row = []
        for col in Bt:
            s = 0
            for x, y in zip(row, col):
                if x and y:
                    s = add[s][mul[x][y]]
            out_row.append(s)
        out.append(tuple(out_row))
    return out


def mat_vec(F, A, v):
    """A v for a column vector v."""
    add, mul = F.add_l, F.mul_l
    out = []
    for row in A:
        s = 0
        for x, y in zip(row, v):
            if x and y:
                s = add[s][mul[x][y]]
        out.append(s)
    return tuple(out)


def vec_mat(F, v, A):
    """v A for a row vector v."""
    return mat_vec(F, list(zip(*A)), v)


def identity(n):
    return [tuple(1 if i == j else 0 for j in range(n)) for i in range(n)]


def mat_inv(F, A):
    n = len(A)
    aug = [list(A[i]) + list(row) for i, row in enumerate(identity(n))]
    R, pivots = rref(F, aug, 2 * n)
    if pivots[:n] != list(range(n)) or len(R) < n:
        raise FieldError("singular matrix")
    return [tuple(R[i][n:]) for i in range(n)]


def det_nonzero(F, A):
    return rank(F, A, len(A)) == len(A)


def transpose(A):
    return [tuple(c) for c in zip(*A)]


def frob_matrix(F, A, s):
    """Entrywise x -> x^(p^s)."""
    s %= F.h
    if s == 0:
        return [tuple(r) for r in A]
    e = F.p ** s
    return [tuple(F.power(x, e) for x in row) for row in A]


def frob_vec(F, v, s):
    s %= F.h
    if s == 0:
        return tuple(v)
    e = F.p ** s
    return tuple(F.power(x, e) for x in v)


def scale(F, c, v):
    m = F.mul_l[c]
    return tuple(m[x] for x in v)


def vadd(F, u, v):
    add = F.add_l
    return tuple(add[x][y] for x, y in zip(u, v))


def dot(F, u, v):
    add, mul = F.add_l, F.mul_l
    s = 0
    for x, y in zip(u, v):
        if x and y:
            s = add[s][mul[x][y]]
    return s


def normalize(F, v):
    """Scale so the leftmost nonzero entry is 1; None for the zero vector."""
    for x in v:
        if x:
            return scale(F, F.inv_l[x], v) if x != 1 else tuple(v)
    return None


# -- vectorised helpers: numpy int arrays of field elements -------------------

def np_matmul(F, X, Y):
    """X @ Y over F for 2-d int arrays (X: m x k, Y: k x n)."""
    X = np.asarray(X, dtype=np.int64)
    Y = np.asarray(Y, dtype=np.int64)
    out = np.zeros((X.shape[0], Y.shape[1]), dtype=np.int64)
    for j in range(X.shape[1]):
        out = F.add_t[out, F.mul_t[X[:, j][:, None], Y[j][None, :]]]
    return out


def np_rank_batch(F, mats):
    """Ranks of a batch of matrices (shape b x m x n) by vectorised elimination."""
    M = np.array(mats, dtype=np.int64, copy=True)
    b, m, n = M.shape
    ranks = np.zeros(b, dtype=np.int64)
    rows_idx = np.arange(b)
    for c in range(n):
        # candidate pivot: first row >= rank with nonzero entry in column c
        active = np.arange(m)[None, :] >= ranks[:, None]
        cand = (M[:, :, c] != 0) & active
        has = cand.any(axis=1)
        if not has.any():
            continue
        piv = np.argmax(cand, axis=1)
        sel = rows_idx[has]
        pr = piv[has]
        rk = ranks[has]
        # swap pivot row into position rk
        tmp = M[sel, pr].copy()
        M[sel, pr] = M[sel, rk]
        M[sel, rk] = tmp
        prow = M[sel, rk]
        prow = F.mul_t[F.inv_t[prow[:, c]][:, None], prow]
        M[sel, rk] = prow
        for i in range(m):
            f = M[sel, i, c]
            mask = (f != 0) & (rk != i)
            if mask.any():
                s = sel[mask]
                M[s, i] = F.sub_t[M[s, i], F.mul_t[f[mask][:, None], prow[mask]]]
        ranks[has] += 1
    return ranks
