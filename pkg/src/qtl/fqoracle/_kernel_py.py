"""Enumeration kernels over GF(p^2), pure Python.

Matrices are lists of rows of encoded field elements.  The compiled module
``_kernel`` exposes the same functions with the same results.
"""
from __future__ import annotations

import itertools


def rank(rows, ncols: int, Q: int, add, mul, neg, inv) -> int:
    m = [list(r) for r in rows]
    rk = 0
    nrows = len(m)
    for col in range(ncols):
        piv = None
        for i in range(rk, nrows):
            if m[i][col]:
                piv = i
                break
        if piv is None:
            continue
        m[rk], m[piv] = m[piv], m[rk]
        prow = m[rk]
        s = inv[prow[col]]
        prow = [mul[s * Q + x] for x in prow]
        m[rk] = prow
        for i in range(rk + 1, nrows):
            f = m[i][col]
            if f:
                nf = neg[f]
                row = m[i]
                m[i] = [add[row[j] * Q + mul[nf * Q + prow[j]]] for j in range(ncols)]
        rk += 1
        if rk == nrows:
            break
    return rk


def rref_iter(a: int, n: int, Q: int):
    """All a x n reduced row echelon matrices with full rank a."""
    for pivots in itertools.combinations(range(n), a):
        pivset = set(pivots)
        free = [(i, j) for i, p in enumerate(pivots) for j in range(p + 1, n) if j not in pivset]
        for vals in itertools.product(range(Q), repeat=len(free)):
            m = [[0] * n for _ in range(a)]
            for i, p in enumerate(pivots):
                m[i][p] = 1
            for (i, j), v in zip(free, vals):
                m[i][j] = v
            yield m


def profile_tally(n: int, a: int, Q: int, add, mul, neg, inv) -> dict:
    """Tally of (dim(W cap F_0), ..., dim(W cap F_n)) over all a-dim W,
    F_i the span of the first i coordinates."""
    out: dict = {}
    for m in rref_iter(a, n, Q):
        prof = tuple(a - rank([row[i:] for row in m], n - i, Q, add, mul, neg, inv)
                     for i in range(n + 1))
        out[prof] = out.get(prof, 0) + 1
    return out


def t_fiber_tally(shape, w, Q: int, add, mul, neg, inv) -> dict:
    """Tally of (alpha(im t), alpha(ker t)) over all t with t(D_i) in D_{i-1}
    and im t in W0 in ker t, for the standard flag and standard W0 of type w."""
    k = len(shape)
    wrows = [(i, s) for i in range(k) for s in range(w[i])]          # W basis
    ccols = [(j, s) for j in range(k) for s in range(shape[j] - w[j])]  # complement
    free = [(x, y) for x, (i, _) in enumerate(wrows) for y, (j, _) in enumerate(ccols) if i < j]
    nr, nc = len(wrows), len(ccols)
    prefix = [0]
    for x in shape:
        prefix.append(prefix[-1] + x)
    col_upto = [[y for y, (j, _) in enumerate(ccols) if j <= i] for i in range(k)]
    row_after = [[x for x, (j, _) in enumerate(wrows) if j > i] for i in range(k)]
    out: dict = {}
    for vals in itertools.product(range(Q), repeat=len(free)):
        C = [[0] * nc for _ in range(nr)]
        for (x, y), v in zip(free, vals):
            C[x][y] = v
        total = rank(C, nc, Q, add, mul, neg, inv)
        ker_prev = im_prev = 0
        r, n = [], []
        for i in range(k):
            cols = col_upto[i]
            rk_cols = rank([[row[y] for y in cols] for row in C], len(cols), Q, add, mul, neg, inv)
            ker = prefix[i + 1] - rk_cols
            rows = [C[x] for x in row_after[i]]
            im = total - rank(rows, nc, Q, add, mul, neg, inv)
            r.append(im - im_prev)
            n.append(ker - ker_prev)
            im_prev, ker_prev = im, ker
        key = (tuple(r), tuple(n))
        out[key] = out.get(key, 0) + 1
    return out


def _apply(t, v, Q, add, mul):
    n = len(v)
    out = []
    for row in t:
        s = 0
        for j in range(n):
            if row[j] and v[j]:
                s = add[s * Q + mul[row[j] * Q + v[j]]]
        out.append(s)
    return out


def _combine(coeffs, basis, Q, add, mul):
    n = len(basis[0])
    out = []
    for row in coeffs:
        v = [0] * n
        for c, b in zip(row, basis):
            if c:
                for j in range(n):
                    if b[j]:
                        v[j] = add[v[j] * Q + mul[c * Q + b[j]]]
        out.append(v)
    return out


def flag_tally(shape, W, im, ker, t, Q: int, add, mul, neg, inv) -> dict:
    """Tally of (alpha(W), alpha(im t), alpha(ker t)) over all flags of type
    shape with t(D_i) in D_{i-1}; W, im, ker are bases (lists of rows)."""
    k = len(shape)
    N = sum(shape)
    dims = [0]
    for x in shape:
        dims.append(dims[-1] + x)
    ident = [[1 if i == j else 0 for j in range(N)] for i in range(N)]
    subs = [W, im, ker]
    out: dict = {}

    def meet(U, D, dimD):
        if not U or not D:
            return 0
        return len(U) + dimD - rank(U + D, N, Q, add, mul, neg, inv)

    def finish(chain):
        # chain[i] is a basis of D_i, i = 0..k
        keys = []
        for U in subs:
            prev = 0
            alpha = []
            for i in range(1, k + 1):
                cur = meet(U, chain[i], dims[i])
                alpha.append(cur - prev)
                prev = cur
            keys.append(tuple(alpha))
        key = tuple(keys)
        out[key] = out.get(key, 0) + 1

    def descend(chain, j):
        # choose D_j inside D_{j+1} = chain[j+1]
        if j == 0:
            top = chain[1]
            if any(any(_apply(t, v, Q, add, mul)) for v in top):
                return
            finish([[]] + chain[1:])
            return
        upper = chain[j + 1]
        images = [_apply(t, v, Q, add, mul) for v in upper]
        images = [v for v in images if any(v)]
        for coeffs in rref_iter(dims[j], dims[j + 1], Q) if dims[j] else [[]]:
            D = _combine(coeffs, upper, Q, add, mul) if dims[j] else []
            if images and rank(D + images, N, Q, add, mul, neg, inv) != dims[j]:
                continue
            chain[j] = D
            descend(chain, j - 1)

    chain = [None] * (k + 1)
    chain[k] = ident
    descend(chain, k - 1)
    return out
