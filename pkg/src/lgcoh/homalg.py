"""Graded Hom spaces and Euler forms between sums of Schur bundles.

Hom^i(A, B) is H^i(A^v (x) B), computed by expanding the tensor product
with the LR rule and applying Bott's theorem to each summand.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable

from . import expr as _expr
from . import kernels
from .bott import GradedSpRep, cohomology_expr, graded_dim, lg_dim
from .ktheory import schur_class
from .lr import RepSum, WeightSum, lr_general, tensor
from .weights import GLWeight, SpWeight, WeightError, check_rank, dual_weight, sp_dim


@dataclass(frozen=True)
class BundleExpr:
    """A direct sum of Schur bundles with an optional display label."""

    sum: RepSum
    label: str | None = field(default=None, compare=False)

    @property
    def n(self) -> int:
        return self.sum.n

    def __str__(self):
        return self.label or str(self.sum)


def schur(entries, n: int, twist: int = 0, label: str | None = None) -> BundleExpr:
    w = GLWeight.of(entries, n)
    if twist:
        w = GLWeight(tuple(x + twist for x in w.entries))
    return BundleExpr(RepSum.single(w), label)


class _ClassAlgebra:
    """Folds an expression AST into a WeightSum (a class in the representation ring)."""

    def __init__(self, n: int, resolve: Callable[[str, int], WeightSum] | None = None):
        self.n = n
        self.resolve = resolve

    def number(self, c):
        return WeightSum(self.n, {GLWeight.zero(self.n): c})

    def schur(self, entries, t):
        cls = schur_class(entries, self.n, t)
        return RepSum.zero(self.n) if cls is None else RepSum(self.n, cls.terms)

    def ambient(self, kind, power):
        raise _expr.ExprError(
            "the module V is only meaningful at character level; use ktheory for sequences"
        )

    def named(self, name, t):
        if self.resolve is None:
            raise _expr.ExprError(f"unknown bundle {name!r}")
        return self.resolve(name, t)

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return tensor(a, b)

    def dual(self, a):
        return a.dual()

    def twist(self, a, i):
        return a.twist(i)


def parse_class(text: str, n: int, resolve=None) -> WeightSum:
    """Evaluate an expression to a (possibly virtual) class."""
    return _expr.evaluate(_expr.parse(text), _ClassAlgebra(n, resolve))


def parse_bundle(text: str, n: int, resolve=None) -> BundleExpr:
    """Parse an expression that must denote an honest direct sum."""
    cls = parse_class(text, n, resolve)
    if not cls.is_effective():
        raise _expr.ExprError(f"{text!r} is a virtual class, not a bundle")
    return BundleExpr(RepSum(n, cls.terms), text)


def _as_sum(x) -> WeightSum:
    if isinstance(x, BundleExpr):
        return x.sum
    if isinstance(x, WeightSum):
        return x
    if isinstance(x, GLWeight):
        return RepSum.single(x)
    raise TypeError(f"expected a bundle expression, got {type(x).__name__}")


def dual_expr(a: BundleExpr) -> BundleExpr:
    label = f"dual({a.label})" if a.label else None
    return BundleExpr(a.sum.dual(), label)


def twist_expr(a: BundleExpr, i: int) -> BundleExpr:
    label = f"({a.label})({i})" if a.label else None
    return BundleExpr(a.sum.twist(i), label)


@lru_cache(maxsize=1 << 16)
def _hom_weights(a: GLWeight, b: GLWeight) -> GradedSpRep:
    return cohomology_expr(lr_general(dual_weight(a), b))


def hom_graded(a, b) -> GradedSpRep:
    """Hom^*(A, B) = H^*(A^v (x) B) as a graded Sp(2n) representation."""
    sa, sb = _as_sum(a), _as_sum(b)
    n = check_rank(sa.n, sb.n)
    if not (sa.is_effective() and sb.is_effective()):
        raise WeightError("hom_graded needs honest bundles; use euler_class for virtual classes")
    out = GradedSpRep.zero(n)
    for w1, m1 in sa.items():
        for w2, m2 in sb.items():
            h = _hom_weights(w1, w2)
            if h:
                out = out + h.scale(m1 * m2)
    return out


def euler_class(a, b) -> dict[SpWeight, int]:
    """Equivariant Euler characteristic: sum_i (-1)^i Hom^i(A, B) as a virtual Sp(2n) module.

    Bilinear, so A and B may be virtual classes.
    """
    sa, sb = _as_sum(a), _as_sum(b)
    check_rank(sa.n, sb.n)
    acc: dict[SpWeight, int] = {}
    for w1, m1 in sa.items():
        for w2, m2 in sb.items():
            for mu, c in _hom_weights(w1, w2).euler_class().items():
                acc[mu] = acc.get(mu, 0) + m1 * m2 * c
    return {mu: c for mu, c in acc.items() if c}


def euler_form(a, b) -> int:
    """chi(A, B) = sum_i (-1)^i dim Hom^i(A, B); bilinear, accepts virtual classes."""
    return sum(c * sp_dim(mu) for mu, c in euler_class(a, b).items())


@dataclass
class SerreReport:
    ok: bool
    left: dict[int, int]
    right: dict[int, int]
    mismatches: list[tuple[int, int, int]]  # (i, dim Hom^i(A,B), dim Hom^{N-i}(B, A(-n-1)))

    def __bool__(self):
        return self.ok


def serre_check(a, b) -> SerreReport:
    """Compare dim Hom^i(A,B) with dim Hom^{N-i}(B, A(-n-1)) for every i."""
    sa, sb = _as_sum(a), _as_sum(b)
    n = check_rank(sa.n, sb.n)
    top = lg_dim(n)
    left = graded_dim(hom_graded(sa, sb))
    right = graded_dim(hom_graded(sb, sa.twist(-n - 1)))
    mism = []
    for i in range(top + 1):
        x, y = left.get(i, 0), right.get(top - i, 0)
        if x != y:
            mism.append((i, x, y))
    return SerreReport(not mism, left, right, mism)


def clear_cache() -> None:
    kernels.clear_caches()
