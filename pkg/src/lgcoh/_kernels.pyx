# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels.  Same API and results as ``_kernels_py``."""

from libc.stdint cimport int64_t, uint64_t
from libc.stdlib cimport calloc, free
from libcpp.unordered_map cimport unordered_map
from cython.operator cimport dereference as deref, preincrement as inc

cdef enum:
    MAXN = 8
    BIAS = 128


def bott_length(v):
    cdef int n = len(v)
    cdef long[64] e
    cdef int i, j, length = 0
    cdef long x, y
    if n > 64:
        raise ValueError("rank too large")
    for i in range(n):
        e[i] = v[i]
    for i in range(n):
        x = e[i]
        if x == 0:
            return -1
        for j in range(i + 1, n):
            y = e[j]
            if x == y or x == -y:
                return -1
            if x + y < 0:
                length += 1
            if x < y:
                length += 1
        if x < 0:
            length += 1
    return length


cdef struct LRState:
    int n
    int m
    int W
    int total
    int placed
    int* lam
    int* mu
    int* used
    int* before
    int* grid
    int* rowlen


cdef int lr_start_row(LRState* s, int r, dict out) except -1:
    cdef int i
    for i in range(s.lam[r]):
        s.grid[r * s.W + i] = 0
    s.rowlen[r] = s.lam[r]
    for i in range(s.m):
        s.before[r * s.m + i] = s.used[i]
    return lr_fill(s, r, 0, out)


cdef int lr_fill(LRState* s, int r, int k, dict out) except -1:
    cdef int pos, cap, c, i, t
    if k == s.m:
        if s.placed == s.total:
            key = tuple([s.rowlen[i] for i in range(r + 1)] + [s.lam[i] for i in range(r + 1, s.n)])
            out[key] = out.get(key, 0) + 1
        elif r + 1 < s.n:
            lr_start_row(s, r + 1, out)
        return 0
    pos = s.rowlen[r]
    cap = s.mu[k] - s.used[k]
    if k > 0:
        t = s.before[r * s.m + k - 1] - s.used[k]
        if t < cap:
            cap = t
    if r > 0:
        t = s.rowlen[r - 1] - pos
        if t < cap:
            cap = t
    lr_fill(s, r, k + 1, out)
    c = 0
    while c < cap:
        if r > 0 and s.grid[(r - 1) * s.W + pos + c] > k:
            break
        s.grid[r * s.W + pos + c] = k + 1
        s.used[k] += 1
        s.placed += 1
        c += 1
        s.rowlen[r] = pos + c
        lr_fill(s, r, k + 1, out)
    s.rowlen[r] = pos
    s.used[k] -= c
    s.placed -= c
    return 0


def lr_coefficients(lam, mu, int n):
    lam_l = [x for x in lam if x]
    mu_l = [x for x in mu if x]
    if len(lam_l) > n or len(mu_l) > n:
        return {}
    lam_l = lam_l + [0] * (n - len(lam_l))
    cdef int m = len(mu_l)
    if m == 0:
        return {tuple(lam_l): 1}
    cdef LRState s
    cdef int i
    s.n = n
    s.m = m
    s.W = lam_l[0] + mu_l[0] + 1
    s.total = sum(mu_l)
    s.placed = 0
    s.lam = <int*> calloc(n, sizeof(int))
    s.mu = <int*> calloc(m, sizeof(int))
    s.used = <int*> calloc(m, sizeof(int))
    s.before = <int*> calloc(n * m, sizeof(int))
    s.grid = <int*> calloc(n * s.W, sizeof(int))
    s.rowlen = <int*> calloc(n, sizeof(int))
    out = {}
    try:
        if not (s.lam and s.mu and s.used and s.before and s.grid and s.rowlen):
            raise MemoryError()
        for i in range(n):
            s.lam[i] = lam_l[i]
        for i in range(m):
            s.mu[i] = mu_l[i]
        lr_start_row(&s, 0, out)
    finally:
        free(s.lam)
        free(s.mu)
        free(s.used)
        free(s.before)
        free(s.grid)
        free(s.rowlen)
    return out


cdef inline uint64_t pack(int64_t* e, int n):
    cdef uint64_t key = 0
    cdef int i
    for i in range(n):
        key = (key << 8) | <uint64_t> (e[i] + BIAS)
    return key


cdef tuple unpack(uint64_t key, int n):
    cdef int i
    cdef list out = [0] * n
    for i in range(n - 1, -1, -1):
        out[i] = <int64_t> (key & 0xFF) - BIAS
        key >>= 8
    return tuple(out)


cdef int gt_rec(int* pat, int k, int n, int64_t* expo, unordered_map[uint64_t, int64_t]& acc) except -1:
    # pat row k (length k) lives at pat[k*n .. k*n+k); build row k-1 interlacing it
    cdef int i, lo, hi
    cdef int64_t sk, sk1
    if k == 0:
        acc[pack(expo, n)] += 1
        return 0
    if k == 1:
        sk = 0
        for i in range(k):
            sk += pat[k * n + i]
        expo[0] = sk
        acc[pack(expo, n)] += 1
        return 0
    return gt_level(pat, k, 0, n, expo, acc)


cdef int gt_level(int* pat, int k, int i, int n, int64_t* expo, unordered_map[uint64_t, int64_t]& acc) except -1:
    cdef int x, j
    cdef int64_t sk, sk1
    if i == k - 1:
        sk = 0
        sk1 = 0
        for j in range(k):
            sk += pat[k * n + j]
        for j in range(k - 1):
            sk1 += pat[(k - 1) * n + j]
        expo[k - 1] = sk - sk1
        return gt_rec(pat, k - 1, n, expo, acc)
    for x in range(pat[k * n + i + 1], pat[k * n + i] + 1):
        pat[(k - 1) * n + i] = x
        gt_level(pat, k, i + 1, n, expo, acc)
    return 0


def schur_monomials(shape, int n):
    shape_l = [x for x in shape if x]
    if len(shape_l) > n:
        return {}
    if n > MAXN or sum(shape_l) > 127:
        raise OverflowError("shape outside packed-exponent range")
    shape_l = shape_l + [0] * (n - len(shape_l))
    cdef int* pat = <int*> calloc((n + 1) * n, sizeof(int))
    cdef int64_t[MAXN] expo
    cdef unordered_map[uint64_t, int64_t] acc
    cdef int i
    if not pat:
        raise MemoryError()
    try:
        for i in range(n):
            pat[n * n + i] = shape_l[i]
        gt_rec(pat, n, n, expo, acc)
    finally:
        free(pat)
    out = {}
    it = acc.begin()
    while it != acc.end():
        out[unpack(deref(it).first, n)] = deref(it).second
        inc(it)
    return out


def laurent_mul(dict a, dict b):
    if not a or not b:
        return {}
    cdef int n = len(next(iter(a)))
    if n > MAXN:
        raise OverflowError("too many variables for packed kernel")
    cdef Py_ssize_t na = len(a), nb = len(b), i, j
    cdef int t
    cdef int64_t* ea = <int64_t*> calloc(na * n + 1, sizeof(int64_t))
    cdef int64_t* eb = <int64_t*> calloc(nb * n + 1, sizeof(int64_t))
    cdef int64_t* ca = <int64_t*> calloc(na + 1, sizeof(int64_t))
    cdef int64_t* cb = <int64_t*> calloc(nb + 1, sizeof(int64_t))
    cdef int64_t[MAXN] e
    cdef int64_t v
    cdef unordered_map[uint64_t, int64_t] acc
    try:
        if not (ea and eb and ca and cb):
            raise MemoryError()
        amax = 0
        bmax = 0
        for i, (k, c) in enumerate(a.items()):
            for t in range(n):
                ea[i * n + t] = k[t]
            ca[i] = c
            amax = max(amax, abs(c))
        for j, (k, c) in enumerate(b.items()):
            for t in range(n):
                eb[j * n + t] = k[t]
            cb[j] = c
            bmax = max(bmax, abs(c))
        if amax * bmax * min(na, nb) >= 2 ** 62:
            raise OverflowError("coefficients too large for int64 kernel")
        for i in range(na):
            for j in range(nb):
                for t in range(n):
                    v = ea[i * n + t] + eb[j * n + t]
                    if v < -BIAS or v >= BIAS:
                        raise OverflowError("exponent outside packed range")
                    e[t] = v
                acc[pack(e, n)] += ca[i] * cb[j]
    finally:
        free(ea)
        free(eb)
        free(ca)
        free(cb)
    out = {}
    it = acc.begin()
    while it != acc.end():
        if deref(it).second != 0:
            out[unpack(deref(it).first, n)] = deref(it).second
        inc(it)
    return out
