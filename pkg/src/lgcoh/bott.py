"""Cohomology of Schur bundles on LG(n,2n) via Bott's theorem."""

from __future__ import annotations

from typing import Iterable, Mapping

from .lr import WeightSum
from .weights import (
    AmbientVector,
    GLWeight,
    RankMismatch,
    SpWeight,
    WeightError,
    check_rank,
    format_weight,
    regularity,
    rho,
    sp_dim,
)


def lg_dim(n: int) -> int:
    """Dimension n(n+1)/2 of LG(n,2n)."""
    return n * (n + 1) // 2


class GradedSpRep:
    """Per cohomological degree, a multiset of dominant Sp(2n) weights.

    ``components`` maps degree -> {SpWeight: multiplicity}.  Empty
    degrees and zero multiplicities are dropped, so the zero object is an
    empty map.
    """

    __slots__ = ("n", "_comp")

    def __init__(self, n: int, components: Mapping[int, Mapping] | None = None):
        if n < 1:
            raise WeightError(f"invalid rank {n}")
        self.n = n
        top = lg_dim(n)
        comp: dict[int, dict[SpWeight, int]] = {}
        for d, reps in (components or {}).items():
            d = int(d)
            if not 0 <= d <= top:
                raise WeightError(f"degree {d} outside [0,{top}]")
            items = reps.items() if isinstance(reps, Mapping) else reps
            for w, m in items:
                if not isinstance(w, SpWeight):
                    w = SpWeight(tuple(w))
                if w.n != n:
                    raise RankMismatch(f"weight {w} has rank {w.n}, expected {n}")
                if m < 0:
                    raise WeightError(f"negative multiplicity {m} in degree {d}")
                if m:
                    comp.setdefault(d, {})
                    comp[d][w] = comp[d].get(w, 0) + m
        self._comp = comp

    @classmethod
    def zero(cls, n: int) -> "GradedSpRep":
        return cls(n)

    @classmethod
    def literal(cls, n: int, table: Mapping[int, Iterable]) -> "GradedSpRep":
        """Build from {degree: [weight or (weight, mult), ...]}; weights may be short."""
        comp: dict[int, dict] = {}
        for d, entries in table.items():
            for item in entries:
                if isinstance(item, tuple) and len(item) == 2 and isinstance(item[0], (tuple, SpWeight)):
                    w, m = item
                else:
                    w, m = item, 1
                w = tuple(w.entries if isinstance(w, SpWeight) else w)
                w = SpWeight(w + (0,) * (n - len(w)))
                comp.setdefault(d, {})
                comp[d][w] = comp[d].get(w, 0) + m
        return cls(n, comp)

    @property
    def components(self) -> dict[int, dict[SpWeight, int]]:
        return {d: dict(r) for d, r in self._comp.items()}

    def degrees(self) -> list[int]:
        return sorted(self._comp)

    def in_degree(self, d: int) -> dict[SpWeight, int]:
        return dict(self._comp.get(d, {}))

    def is_zero(self) -> bool:
        return not self._comp

    def __bool__(self):
        return bool(self._comp)

    def __eq__(self, other):
        if not isinstance(other, GradedSpRep):
            return NotImplemented
        return self.n == other.n and self._comp == other._comp

    def __add__(self, other: "GradedSpRep") -> "GradedSpRep":
        check_rank(self.n, other.n)
        comp = self.components
        for d, r in other._comp.items():
            tgt = comp.setdefault(d, {})
            for w, m in r.items():
                tgt[w] = tgt.get(w, 0) + m
        return GradedSpRep(self.n, comp)

    def scale(self, c: int) -> "GradedSpRep":
        return GradedSpRep(self.n, {d: {w: c * m for w, m in r.items()} for d, r in self._comp.items()})

    def vanishes_except(self, allowed: Iterable[int]) -> bool:
        allowed = set(allowed)
        return all(d in allowed for d in self._comp)

    def euler(self) -> int:
        return sum((-1) ** d * v for d, v in graded_dim(self).items())

    def euler_class(self) -> dict[SpWeight, int]:
        """Alternating sum as a virtual Sp(2n) representation."""
        acc: dict[SpWeight, int] = {}
        for d, r in self._comp.items():
            for w, m in r.items():
                acc[w] = acc.get(w, 0) + (-1) ** d * m
        return {w: m for w, m in acc.items() if m}

    def to_json(self) -> dict:
        out = {}
        for d in self.degrees():
            out[str(d)] = [
                {"weight": list(w.entries), "mult": m, "dim": sp_dim(w)}
                for w, m in sorted(self._comp[d].items(), reverse=True)
            ]
        return {"degrees": out}

    def __str__(self):
        if not self._comp:
            return "0"
        parts = []
        for d in self.degrees():
            reps = " + ".join(
                (f"{m}*" if m != 1 else "") + f"V{format_weight(w.entries)}"
                for w, m in sorted(self._comp[d].items(), reverse=True)
            )
            parts.append(f"H^{d}: {reps}")
        return "; ".join(parts)

    def __repr__(self):
        return f"GradedSpRep(n={self.n}, {self})"


def cohomology_weight(lam: GLWeight) -> GradedSpRep:
    """H^*(LG(n,2n), S^lam Q): zero, or one irreducible in a single degree."""
    n = lam.n
    r = rho(n)
    v = AmbientVector(tuple(x + y for x, y in zip(lam.entries, r.entries)))
    reg = regularity(v)
    if reg.singular:
        return GradedSpRep.zero(n)
    mu = SpWeight(tuple(x - y for x, y in zip(reg.dominant.entries, r.entries)))
    return GradedSpRep(n, {reg.length: {mu: 1}})


def cohomology_expr(e: WeightSum) -> GradedSpRep:
    """Additive extension of ``cohomology_weight`` over a direct sum."""
    comp: dict[int, dict[SpWeight, int]] = {}
    for w, m in e.items():
        if m < 0:
            raise WeightError("cohomology of a virtual sum is not a graded representation")
        for d, r in cohomology_weight(w)._comp.items():
            tgt = comp.setdefault(d, {})
            for mu, c in r.items():
                tgt[mu] = tgt.get(mu, 0) + c * m
    return GradedSpRep(e.n, comp)


def graded_dim(r: GradedSpRep) -> dict[int, int]:
    """Total dimension per nonzero degree."""
    out = {}
    for d in r.degrees():
        v = sum(m * sp_dim(w) for w, m in r._comp[d].items())
        if v:
            out[d] = v
    return out
