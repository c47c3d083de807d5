"""Pure-Python kernels.  Reference implementation and fallback for ``_kernels``."""

from __future__ import annotations


def bott_length(v):
    """Number of positive C_n roots negative on ``v``, or -1 if ``v`` is singular."""
    n = len(v)
    absv = set()
    length = 0
    for i in range(n):
        x = v[i]
        if x == 0:
            return -1
        a = -x if x < 0 else x
        if a in absv:
            return -1
        absv.add(a)
        if x < 0:
            length += 1
        for j in range(i + 1, n):
            y = v[j]
            if x + y < 0:
                length += 1
            if x < y:
                length += 1
    return length


def lr_coefficients(lam, mu, n):
    """Littlewood-Richardson coefficients c^nu_{lam,mu} for nu with at most n rows.

    ``lam`` and ``mu`` are partitions (weakly decreasing, nonnegative).  The
    skew shape nu/lam is filled row by row with weakly increasing rows,
    strictly increasing columns and content mu, subject to the lattice
    condition on the right-to-left, top-to-bottom reading word.  Returns a
    dict mapping nu (padded to length n) to the number of such fillings.
    """
    lam = [x for x in lam if x]
    mu = [x for x in mu if x]
    if len(lam) > n or len(mu) > n:
        return {}
    lam = lam + [0] * (n - len(lam))
    m = len(mu)
    if m == 0:
        return {tuple(lam): 1}
    out = {}
    used = [0] * m
    nu = [0] * n
    total = sum(mu)
    placed = 0

    def start_row(r, prev):
        fill(r, prev, [0] * lam[r], used[:], 0)

    def fill(r, prev, row, before, k):
        # row: entries of row r by column, 0 on cells of lam
        nonlocal placed
        if k == m:
            nu[r] = len(row)
            if placed == total:
                key = tuple(nu[: r + 1]) + tuple(lam[r + 1 :])
                out[key] = out.get(key, 0) + 1
            elif r + 1 < n:
                start_row(r + 1, row)
            return
        pos = len(row)
        cap = mu[k] - used[k]
        if k:
            # lattice: the (k+1)'s of this row are read before any k of this row
            cap = min(cap, before[k - 1] - used[k])
        if prev is not None:
            cap = min(cap, len(prev) - pos)
        fill(r, prev, row, before, k + 1)
        c = 0
        while c < cap:
            if prev is not None and prev[pos + c] > k:
                break
            row.append(k + 1)
            used[k] += 1
            placed += 1
            c += 1
            fill(r, prev, row, before, k + 1)
        del row[pos:]
        used[k] -= c
        placed -= c

    start_row(0, None)
    return out


def schur_monomials(shape, n):
    """Monomial expansion of the Schur polynomial s_shape(x_1, ..., x_n).

    Enumerates semistandard tableaux through their Gelfand-Tsetlin
    patterns: the cells holding the largest letter form a horizontal
    strip, so s_lam(x_1..x_k) is a sum over interlacing mu of
    s_mu(x_1..x_{k-1}) * x_k^(|lam|-|mu|).
    """
    shape = tuple(x for x in shape if x)
    if len(shape) > n:
        return {}
    memo = {}

    def rec(lam, k):
        # lam has length <= k (zeros dropped); returns dict of exponent tuples of length k
        key = (lam, k)
        hit = memo.get(key)
        if hit is not None:
            return hit
        if k == 0:
            res = {(): 1}
            memo[key] = res
            return res
        size = sum(lam)
        res = {}
        full = lam + (0,) * (k - len(lam))
        for sub in _interlacing(full):
            xk = size - sum(sub)
            for mono, c in rec(tuple(x for x in sub if x), k - 1).items():
                mono = mono + (xk,)
                res[mono] = res.get(mono, 0) + c
        memo[key] = res
        return res

    return rec(shape, n)


def _interlacing(lam):
    """All mu of length len(lam)-1 with lam_1 >= mu_1 >= lam_2 >= ... >= mu_{k-1} >= lam_k."""
    k = len(lam)
    if k == 1:
        yield ()
        return
    out = [0] * (k - 1)

    def rec(i):
        if i == k - 1:
            yield tuple(out)
            return
        for x in range(lam[i + 1], lam[i] + 1):
            out[i] = x
            yield from rec(i + 1)

    yield from rec(0)


def laurent_mul(a, b):
    """Product of two sparse Laurent polynomials given as {exponent tuple: coefficient}."""
    out = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            out[e] = out.get(e, 0) + ca * cb
    return {e: c for e, c in out.items() if c}
