# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled enumeration kernels over GF(p^2); same API as _kernel_py."""

import itertools

from libc.stdlib cimport malloc, free, calloc


cdef class _Tables:
    cdef int Q
    cdef int* add
    cdef int* mul
    cdef int* neg
    cdef int* inv

    def __cinit__(self, int Q, add, mul, neg, inv):
        cdef int i
        self.Q = Q
        self.add = <int*> malloc(Q * Q * sizeof(int))
        self.mul = <int*> malloc(Q * Q * sizeof(int))
        self.neg = <int*> malloc(Q * sizeof(int))
        self.inv = <int*> malloc(Q * sizeof(int))
        if not (self.add and self.mul and self.neg and self.inv):
            raise MemoryError()
        for i in range(Q * Q):
            self.add[i] = add[i]
            self.mul[i] = mul[i]
        for i in range(Q):
            self.neg[i] = neg[i]
            self.inv[i] = inv[i]

    def __dealloc__(self):
        free(self.add)
        free(self.mul)
        free(self.neg)
        free(self.inv)


cdef int c_rank(int* m, int nrows, int ncols, int stride, _Tables T):
    """Rank of the nrows x ncols matrix at m (row stride `stride`); destroys m."""
    cdef int Q = T.Q
    cdef int* add = T.add
    cdef int* mul = T.mul
    cdef int rk = 0, col, i, j, piv, s, f, nf, tmp
    cdef int* prow
    cdef int* row
    for col in range(ncols):
        if rk == nrows:
            break
        piv = -1
        for i in range(rk, nrows):
            if m[i * stride + col]:
                piv = i
                break
        if piv < 0:
            continue
        if piv != rk:
            for j in range(ncols):
                tmp = m[piv * stride + j]
                m[piv * stride + j] = m[rk * stride + j]
                m[rk * stride + j] = tmp
        prow = m + rk * stride
        s = T.inv[prow[col]]
        for j in range(col, ncols):
            prow[j] = mul[s * Q + prow[j]]
        for i in range(rk + 1, nrows):
            row = m + i * stride
            f = row[col]
            if f:
                nf = T.neg[f]
                for j in range(col, ncols):
                    if prow[j]:
                        row[j] = add[row[j] * Q + mul[nf * Q + prow[j]]]
        rk += 1
    return rk


cdef int* _to_buffer(rows, int ncols) except NULL:
    cdef int nrows = len(rows)
    cdef int* buf = <int*> calloc(max(nrows * ncols, 1), sizeof(int))
    cdef int i, j
    if not buf:
        raise MemoryError()
    for i in range(nrows):
        r = rows[i]
        for j in range(ncols):
            buf[i * ncols + j] = r[j]
    return buf


def rank(rows, int ncols, int Q, add, mul, neg, inv):
    cdef _Tables T = _Tables(Q, add, mul, neg, inv)
    return _rank_rows(rows, ncols, T)


cdef int _rank_rows(rows, int ncols, _Tables T) except -1:
    cdef int nrows = len(rows)
    if nrows == 0 or ncols == 0:
        return 0
    cdef int* buf = _to_buffer(rows, ncols)
    cdef int rk = c_rank(buf, nrows, ncols, ncols, T)
    free(buf)
    return rk


def rref_iter(int a, int n, int Q):
    for pivots in itertools.combinations(range(n), a):
        pivset = set(pivots)
        free_pos = [(i, j) for i, p in enumerate(pivots) for j in range(p + 1, n) if j not in pivset]
        for vals in itertools.product(range(Q), repeat=len(free_pos)):
            m = [[0] * n for _ in range(a)]
            for i, p in enumerate(pivots):
                m[i][p] = 1
            for (i, j), v in zip(free_pos, vals):
                m[i][j] = v
            yield m


cdef bint _odometer(int* vals, int nfree, int Q):
    """Advance vals in base Q; False after the last assignment."""
    cdef int i = 0
    while i < nfree:
        vals[i] += 1
        if vals[i] < Q:
            return True
        vals[i] = 0
        i += 1
    return False


def profile_tally(int n, int a, int Q, add, mul, neg, inv):
    cdef _Tables T = _Tables(Q, add, mul, neg, inv)
    cdef int size = 1 << n
    cdef long long* counts = <long long*> calloc(size, sizeof(long long))
    cdef int* base = <int*> calloc(max(a * n, 1), sizeof(int))
    cdef int* scratch = <int*> calloc(max(a * n, 1), sizeof(int))
    cdef int* vals = <int*> calloc(max(a * n, 1), sizeof(int))
    cdef int* fr = <int*> calloc(max(a * n, 1), sizeof(int))
    cdef int* fc = <int*> calloc(max(a * n, 1), sizeof(int))
    cdef int nfree, i, j, c, x, key, prev, cur
    cdef bint more
    if not (counts and base and scratch and vals and fr and fc):
        raise MemoryError()
    try:
        for pivots in itertools.combinations(range(n), a):
            pivset = set(pivots)
            nfree = 0
            for i in range(a):
                for j in range(pivots[i] + 1, n):
                    if j not in pivset:
                        fr[nfree] = i
                        fc[nfree] = j
                        nfree += 1
            for i in range(a * n):
                base[i] = 0
            for i in range(a):
                base[i * n + pivots[i]] = 1
            for i in range(nfree):
                vals[i] = 0
            more = True
            while more:
                for i in range(nfree):
                    base[fr[i] * n + fc[i]] = vals[i]
                # dim(W cap F_c) = a - rank(columns c..n-1); increments are 0/1
                key = 0
                prev = 0
                for c in range(1, n + 1):
                    for i in range(a):
                        for x in range(c, n):
                            scratch[i * n + (x - c)] = base[i * n + x]
                    cur = a - c_rank(scratch, a, n - c, n, T) if c < n else a
                    if cur > prev:
                        key |= 1 << (c - 1)
                    prev = cur
                counts[key] += 1
                more = _odometer(vals, nfree, Q)
        out = {}
        for key in range(size):
            if counts[key]:
                prof = [0]
                cur = 0
                for c in range(n):
                    cur += (key >> c) & 1
                    prof.append(cur)
                out[tuple(prof)] = counts[key]
        return out
    finally:
        free(counts)
        free(base)
        free(scratch)
        free(vals)
        free(fr)
        free(fc)


def t_fiber_tally(shape, w, int Q, add, mul, neg, inv):
    cdef _Tables T = _Tables(Q, add, mul, neg, inv)
    cdef int k = len(shape)
    wrows = [(i, s) for i in range(k) for s in range(w[i])]
    ccols = [(j, s) for j in range(k) for s in range(shape[j] - w[j])]
    free_pos = [(x, y) for x, (i, _) in enumerate(wrows) for y, (j, _) in enumerate(ccols) if i < j]
    cdef int nr = len(wrows), nc = len(ccols), nfree = len(free_pos)
    cdef int i, j, x, y, total, rk, ker, im, ker_prev, im_prev, key, radix
    cdef int cnt
    cdef int* C = <int*> calloc(max(nr * nc, 1), sizeof(int))
    cdef int* S = <int*> calloc(max(nr * nc, 1), sizeof(int))
    cdef int* vals = <int*> calloc(max(nfree, 1), sizeof(int))
    cdef int* fx = <int*> calloc(max(nfree, 1), sizeof(int))
    cdef int* fy = <int*> calloc(max(nfree, 1), sizeof(int))
    cdef int* rowbox = <int*> calloc(max(nr, 1), sizeof(int))
    cdef int* colbox = <int*> calloc(max(nc, 1), sizeof(int))
    cdef int* prefix = <int*> calloc(k + 1, sizeof(int))
    cdef int* rad = <int*> calloc(k + 1, sizeof(int))
    cdef bint more = True
    size = 1
    for i in range(k):
        size *= (shape[i] + 1) * (shape[i] + 1)
    cdef long long* counts = <long long*> calloc(size, sizeof(long long))
    if not (C and S and vals and fx and fy and rowbox and colbox and prefix and rad and counts):
        raise MemoryError()
    try:
        for i in range(nfree):
            fx[i] = free_pos[i][0]
            fy[i] = free_pos[i][1]
        for x in range(nr):
            rowbox[x] = wrows[x][0]
        for y in range(nc):
            colbox[y] = ccols[y][0]
        for i in range(k):
            prefix[i + 1] = prefix[i] + shape[i]
            rad[i] = shape[i] + 1
        while more:
            for i in range(nfree):
                C[fx[i] * nc + fy[i]] = vals[i]
            for i in range(nr * nc):
                S[i] = C[i]
            total = c_rank(S, nr, nc, nc, T) if nr and nc else 0
            ker_prev = 0
            im_prev = 0
            key = 0
            radix = 1
            for i in range(k):
                # rank of the columns in boxes <= i
                cnt = 0
                for y in range(nc):
                    if colbox[y] <= i:
                        for x in range(nr):
                            S[x * nc + cnt] = C[x * nc + y]
                        cnt += 1
                rk = c_rank(S, nr, cnt, nc, T) if nr and cnt else 0
                ker = prefix[i + 1] - rk
                # rank of the rows in boxes > i
                cnt = 0
                for x in range(nr):
                    if rowbox[x] > i:
                        for y in range(nc):
                            S[cnt * nc + y] = C[x * nc + y]
                        cnt += 1
                rk = c_rank(S, cnt, nc, nc, T) if cnt and nc else 0
                im = total - rk
                key += (im - im_prev) * radix
                radix *= rad[i]
                key += (ker - ker_prev) * radix
                radix *= rad[i]
                im_prev = im
                ker_prev = ker
            counts[key] += 1
            more = _odometer(vals, nfree, Q) if nfree else False
        out = {}
        for key in range(size):
            if counts[key]:
                r, n = [], []
                rest = key
                for i in range(k):
                    r.append(rest % rad[i])
                    rest //= rad[i]
                    n.append(rest % rad[i])
                    rest //= rad[i]
                out[(tuple(r), tuple(n))] = counts[key]
        return out
    finally:
        free(C)
        free(S)
        free(vals)
        free(fx)
        free(fy)
        free(rowbox)
        free(colbox)
        free(prefix)
        free(rad)
        free(counts)


cdef list _apply(list t, list v, int Q, _Tables T):
    cdef int n = len(v), i, j, s, a, b
    out = []
    for i in range(len(t)):
        row = t[i]
        s = 0
        for j in range(n):
            a = row[j]
            b = v[j]
            if a and b:
                s = T.add[s * Q + T.mul[a * Q + b]]
        out.append(s)
    return out


cdef list _combine(list coeffs, list basis, int Q, _Tables T):
    cdef int n = len(basis[0]), j, c, b
    out = []
    for row in coeffs:
        v = [0] * n
        for idx in range(len(row)):
            c = row[idx]
            if c:
                bv = basis[idx]
                for j in range(n):
                    b = bv[j]
                    if b:
                        v[j] = T.add[v[j] * Q + T.mul[c * Q + b]]
        out.append(v)
    return out


def flag_tally(shape, W, im, ker, t, int Q, add, mul, neg, inv):
    cdef _Tables T = _Tables(Q, add, mul, neg, inv)
    cdef int k = len(shape)
    cdef int N = sum(shape)
    dims = [0]
    acc = 0
    for x in shape:
        acc += x
        dims.append(acc)
    ident = [[1 if i == j else 0 for j in range(N)] for i in range(N)]
    subs = [list(W), list(im), list(ker)]
    t = [list(r) for r in t]
    out = {}

    def meet(U, D, dimD):
        if not U or not D:
            return 0
        return len(U) + dimD - _rank_rows(U + D, N, T)

    def finish(chain):
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
        if j == 0:
            for v in chain[1]:
                if any(_apply(t, v, Q, T)):
                    return
            finish([[]] + chain[1:])
            return
        upper = chain[j + 1]
        images = [_apply(t, v, Q, T) for v in upper]
        images = [v for v in images if any(v)]
        candidates = rref_iter(dims[j], dims[j + 1], Q) if dims[j] else [[]]
        for coeffs in candidates:
            D = _combine(coeffs, upper, Q, T) if dims[j] else []
            if images and _rank_rows(D + images, N, T) != dims[j]:
                continue
            chain[j] = D
            descend(chain, j - 1)

    chain = [None] * (k + 1)
    chain[k] = ident
    descend(chain, k - 1)
    return out
