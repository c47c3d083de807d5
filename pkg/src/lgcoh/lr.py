"""Littlewood-Richardson decomposition of tensor products of Schur bundles.

Products of S^lam Q and S^mu Q are decomposed over GL(n).  Weights with
negative entries are handled by twisting to partitions first.
"""

from __future__ import annotations

import threading
from functools import lru_cache
from typing import Iterable, Iterator, Mapping

from . import kernels
from .weights import GLWeight, RankMismatch, WeightError, check_rank, format_weight, gl_dim


class WeightSum:
    """A finite integer combination of GL(n) weights.

    Coefficients may have either sign; zero coefficients are dropped.  Used
    directly for virtual classes, and as the base of ``RepSum``.
    """

    __slots__ = ("n", "_terms")

    def __init__(self, n: int, terms: Mapping[GLWeight, int] | Iterable[tuple[GLWeight, int]] = ()):
        if n < 1:
            raise WeightError(f"invalid rank {n}")
        self.n = n
        acc: dict[GLWeight, int] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for w, m in items:
            if not isinstance(w, GLWeight):
                w = GLWeight(tuple(w))
            if w.n != n:
                raise RankMismatch(f"term {w} has rank {w.n}, expected {n}")
            acc[w] = acc.get(w, 0) + int(m)
        self._terms = {w: m for w, m in acc.items() if m}
        self._validate()

    def _validate(self):
        pass

    @classmethod
    def single(cls, w: GLWeight, mult: int = 1):
        return cls(w.n, {w: mult})

    @classmethod
    def zero(cls, n: int):
        return cls(n)

    @property
    def terms(self) -> dict[GLWeight, int]:
        return dict(self._terms)

    def items(self) -> Iterator[tuple[GLWeight, int]]:
        """Terms in lexicographically decreasing order of weight."""
        for w in sorted(self._terms, reverse=True):
            yield w, self._terms[w]

    def __iter__(self):
        return (w for w, _ in self.items())

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def __getitem__(self, w) -> int:
        if not isinstance(w, GLWeight):
            w = GLWeight(tuple(w))
        return self._terms.get(w, 0)

    def __eq__(self, other):
        if not isinstance(other, WeightSum):
            return NotImplemented
        return self.n == other.n and self._terms == other._terms

    def __hash__(self):
        return hash((self.n, frozenset(self._terms.items())))

    def _combine(self, other: "WeightSum", sign: int):
        check_rank(self.n, other.n)
        acc = dict(self._terms)
        for w, m in other._terms.items():
            acc[w] = acc.get(w, 0) + sign * m
        return acc

    def __add__(self, other):
        if not isinstance(other, WeightSum):
            return NotImplemented
        cls = RepSum if isinstance(self, RepSum) and isinstance(other, RepSum) else WeightSum
        return cls(self.n, self._combine(other, 1))

    def __sub__(self, other):
        if not isinstance(other, WeightSum):
            return NotImplemented
        return WeightSum(self.n, self._combine(other, -1))

    def __neg__(self):
        return WeightSum(self.n, {w: -m for w, m in self._terms.items()})

    def scale(self, c: int) -> "WeightSum":
        cls = RepSum if isinstance(self, RepSum) and c >= 0 else WeightSum
        return cls(self.n, {w: c * m for w, m in self._terms.items()})

    def __rmul__(self, c):
        if isinstance(c, int):
            return self.scale(c)
        return NotImplemented

    def map_weights(self, f):
        return type(self)(self.n, [(f(w), m) for w, m in self._terms.items()])

    def twist(self, i: int):
        return self.map_weights(lambda w: GLWeight(tuple(x + i for x in w.entries)))

    def dual(self):
        return self.map_weights(lambda w: GLWeight(tuple(-x for x in reversed(w.entries))))

    def is_effective(self) -> bool:
        return all(m > 0 for m in self._terms.values())

    def dim(self) -> int:
        return sum(m * gl_dim(w) for w, m in self._terms.items())

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for w, m in self.items():
            s = format_weight(w.entries)
            if m == 1:
                parts.append(("+ ", s))
            elif m == -1:
                parts.append(("- ", s))
            else:
                parts.append(("+ " if m > 0 else "- ", f"{abs(m)}*{s}"))
        out = " ".join(f"{sign}{s}" for sign, s in parts)
        return out[2:] if out.startswith("+ ") else "-" + out[2:]

    def __repr__(self):
        return f"{type(self).__name__}(n={self.n}, {self})"


class RepSum(WeightSum):
    """A direct sum of Schur bundles: weights with positive multiplicities."""

    __slots__ = ()

    def _validate(self):
        for w, m in self._terms.items():
            if m < 0:
                raise WeightError(f"negative multiplicity {m} for {w} in a RepSum")

    def tensor(self, other: "RepSum") -> "RepSum":
        return tensor(self, other)


def _as_partition(p) -> tuple[int, ...]:
    e = tuple(p.entries if isinstance(p, GLWeight) else p)
    for i, x in enumerate(e):
        if x < 0:
            raise WeightError(f"partition {format_weight(e)} has a negative entry at index {i}")
        if i and e[i - 1] < x:
            raise WeightError(f"partition {format_weight(e)} is not weakly decreasing at index {i}")
    return e


# Memoized on shift-normalized partitions with trailing zeros stripped.
# lru_cache is internally synchronized, so concurrent callers see the
# same results as with no cache at all.
_cache_lock = threading.Lock()


@lru_cache(maxsize=1 << 16)
def _lr_cached(lam: tuple[int, ...], mu: tuple[int, ...], n: int) -> tuple[tuple[tuple[int, ...], int], ...]:
    out = kernels.lr_coefficients(lam, mu, n)
    return tuple(sorted(out.items(), reverse=True))


def clear_cache() -> None:
    with _cache_lock:
        kernels.clear_caches()


def _strip(p: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(x for x in p if x)


def lr_partitions(lam, mu, n: int) -> RepSum:
    """S^lam (x) S^mu for partitions, truncated to at most n rows."""
    lam = _as_partition(lam)
    mu = _as_partition(mu)
    if len(_strip(lam)) > n or len(_strip(mu)) > n:
        raise WeightError(f"partition has more than {n} rows")
    pairs = _lr_cached(_strip(lam), _strip(mu), n)
    return RepSum(n, [(GLWeight(nu), c) for nu, c in pairs])


def lr_general(lam: GLWeight, mu: GLWeight) -> RepSum:
    """S^lam Q (x) S^mu Q for arbitrary dominant GL(n) weights."""
    n = check_rank(lam.n, mu.n)
    a, b = lam.entries[-1], mu.entries[-1]
    pl = tuple(x - a for x in lam.entries)
    pm = tuple(x - b for x in mu.entries)
    s = a + b
    pairs = _lr_cached(_strip(pl), _strip(pm), n)
    return RepSum(n, [(GLWeight(tuple(x + s for x in nu)), c) for nu, c in pairs])


def tensor(x: WeightSum, y: WeightSum) -> WeightSum:
    """Bilinear extension of lr_general to sums (virtual if either side is)."""
    n = check_rank(x.n, y.n)
    acc: dict[GLWeight, int] = {}
    for w1, m1 in x._terms.items():
        for w2, m2 in y._terms.items():
            for nu, c in lr_general(w1, w2)._terms.items():
                acc[nu] = acc.get(nu, 0) + m1 * m2 * c
    cls = RepSum if isinstance(x, RepSum) and isinstance(y, RepSum) else WeightSum
    return cls(n, acc)


def pieri(lam: GLWeight, k: int) -> RepSum:
    """S^lam Q (x) wedge^k Q by adding a vertical strip of k boxes.

    Independent of the tableau enumeration; used as a cross-check.
    """
    n = lam.n
    if not 1 <= k <= n:
        raise WeightError(f"column length {k} out of range [1,{n}]")
    e = lam.entries
    acc: dict[GLWeight, int] = {}

    def rec(i, left, cur):
        if i == n:
            if left == 0:
                w = GLWeight(tuple(cur))
                acc[w] = acc.get(w, 0) + 1
            return
        if n - i < left:
            return
        rec(i + 1, left, cur + [e[i]])
        # adding a box in row i keeps the shape dominant if row i-1 is long enough
        if left and (i == 0 or cur[i - 1] >= e[i] + 1):
            rec(i + 1, left - 1, cur + [e[i] + 1])

    rec(0, k, [])
    return RepSum(n, acc)
