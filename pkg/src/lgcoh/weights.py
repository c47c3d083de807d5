"""Weights of GL(n) and Sp(2n) in the standard epsilon basis.

The maximal torus of Sp(2n) is identified with the torus of the Levi
GL(n), so a single integer vector of length n serves as a weight for
both groups.  Roots of Sp(2n) are +-e_i and +-e_i +- e_j; the Weyl group
acts by signed permutations.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from math import prod
from typing import Iterable, Sequence

from . import kernels


class WeightError(ValueError):
    """Raised for malformed or non-dominant weights."""


class RankMismatch(ValueError):
    """Raised when weights of different rank are combined."""


def check_rank(*ns: int) -> int:
    first = ns[0]
    for n in ns[1:]:
        if n != first:
            raise RankMismatch(f"rank mismatch: {first} vs {n}")
    return first


@dataclass(frozen=True, order=True)
class AmbientVector:
    """An arbitrary point of the weight lattice (no ordering constraints)."""

    entries: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(int(x) for x in self.entries))
        if not self.entries:
            raise WeightError("empty weight")

    @property
    def n(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    def __str__(self):
        return format_weight(self.entries)


@dataclass(frozen=True, order=True)
class GLWeight(AmbientVector):
    """A dominant GL(n) weight: a weakly decreasing integer sequence.

    Labels the Schur bundle S^lambda Q.  Entries may be negative; a twist
    by O(i) is a uniform shift of all entries.
    """

    def __post_init__(self):
        super().__post_init__()
        e = self.entries
        for i in range(len(e) - 1):
            if e[i] < e[i + 1]:
                raise WeightError(
                    f"GL weight {format_weight(e)} is not weakly decreasing at index {i + 1}"
                )

    @classmethod
    def of(cls, entries: Iterable[int], n: int | None = None) -> "GLWeight":
        """Build a weight, padding with trailing zeros up to rank ``n``."""
        e = list(entries)
        if n is not None:
            if len(e) > n:
                raise WeightError(f"{format_weight(e)} has more than {n} entries")
            e += [0] * (n - len(e))
        return cls(tuple(e))

    @classmethod
    def zero(cls, n: int) -> "GLWeight":
        return cls((0,) * n)

    def shift(self) -> int:
        """Smallest entry; subtracting it yields a partition."""
        return self.entries[-1]

    def to_partition(self) -> tuple[int, ...]:
        s = self.entries[-1]
        return tuple(x - s for x in self.entries)

    def size(self) -> int:
        return sum(self.entries)


@dataclass(frozen=True, order=True)
class SpWeight(AmbientVector):
    """A dominant Sp(2n) weight: weakly decreasing and nonnegative."""

    def __post_init__(self):
        super().__post_init__()
        e = self.entries
        for i in range(len(e) - 1):
            if e[i] < e[i + 1]:
                raise WeightError(
                    f"Sp weight {format_weight(e)} is not weakly decreasing at index {i + 1}"
                )
        if e[-1] < 0:
            raise WeightError(f"Sp weight {format_weight(e)} has a negative last entry")

    @classmethod
    def fundamental(cls, i: int, n: int) -> "SpWeight":
        """omega_i = (1^i, 0^(n-i)); omega_0 is the zero weight."""
        if not 0 <= i <= n:
            raise WeightError(f"fundamental weight index {i} out of range for rank {n}")
        return cls((1,) * i + (0,) * (n - i))

    @classmethod
    def combo(cls, n: int, **coeffs: int) -> "SpWeight":
        """Linear combination of fundamental weights, e.g. ``combo(5, w1=2, w2=1)``."""
        v = [0] * n
        for key, c in coeffs.items():
            i = int(key.lstrip("w"))
            for j in range(i):
                v[j] += c
        return cls(tuple(v))

    @classmethod
    def zero(cls, n: int) -> "SpWeight":
        return cls((0,) * n)


@dataclass(frozen=True)
class Regularity:
    """Outcome of the singularity test.

    ``singular`` is True when the vector lies on a wall of the Weyl
    chamber; otherwise ``length`` is the length of the shortest Weyl group
    element moving it into the dominant chamber and ``dominant`` is the
    image there.
    """

    singular: bool
    length: int | None = None
    dominant: SpWeight | None = None

    @property
    def regular(self) -> bool:
        return not self.singular


SINGULAR = Regularity(singular=True)

_WEIGHT_RE = re.compile(r"^\s*\(\s*(-?\d+(\s*,\s*-?\d+)*)?\s*,?\s*\)\s*$")


def format_weight(entries: Sequence[int]) -> str:
    return "(" + ",".join(str(x) for x in entries) + ")"


def parse_ints(text: str) -> tuple[int, ...]:
    m = _WEIGHT_RE.match(text)
    if not m:
        raise WeightError(f"cannot parse weight {text!r}; expected e.g. '(3,1,1,0,0)'")
    body = text.strip()[1:-1].strip().rstrip(",")
    if not body:
        raise WeightError("empty weight")
    return tuple(int(x) for x in body.split(","))


def parse_weight(text: str, n: int | None = None) -> GLWeight:
    """Parse ``"(a1,...,ak)"`` into a GLWeight, padding zeros up to ``n``."""
    return GLWeight.of(parse_ints(text), n)


def rho(n: int) -> AmbientVector:
    """Half-sum of the positive roots of Sp(2n): (n, n-1, ..., 1)."""
    if n < 1:
        raise WeightError(f"invalid rank {n}")
    return AmbientVector(tuple(range(n, 0, -1)))


def dual_weight(lam: GLWeight) -> GLWeight:
    """Weight of the dual bundle: reverse and negate."""
    return GLWeight(tuple(-x for x in reversed(lam.entries)))


def twist(lam: GLWeight, i: int) -> GLWeight:
    """Tensor with O(i) = det^i, i.e. add i to every entry."""
    return GLWeight(tuple(x + i for x in lam.entries))


def add(a: AmbientVector, b: AmbientVector) -> AmbientVector:
    check_rank(a.n, b.n)
    return AmbientVector(tuple(x + y for x, y in zip(a.entries, b.entries)))


def regularity(v: AmbientVector | Sequence[int]) -> Regularity:
    """Singularity test and Weyl length for type C_n.

    The length is the number of positive roots made negative by v:
    #{i: v_i < 0} + #{i<j: v_i + v_j < 0} + #{i<j: v_i - v_j < 0}.
    """
    e = tuple(v.entries if isinstance(v, AmbientVector) else v)
    length = kernels.bott_length(e)
    if length < 0:
        return SINGULAR
    dom = tuple(sorted((abs(x) for x in e), reverse=True))
    return Regularity(singular=False, length=length, dominant=SpWeight(dom))


def reflection_length_oracle(v: AmbientVector | Sequence[int], rng: random.Random | None = None) -> int:
    """Count simple reflections needed to straighten ``v`` into the dominant chamber.

    Applies s_i (swap positions i, i+1 when v_i < v_{i+1}) and s_n (negate
    the last entry when it is negative) until none applies.  With ``rng``
    the applicable reflection is chosen at random each step; the count
    does not depend on that choice.
    """
    e = list(v.entries if isinstance(v, AmbientVector) else v)
    if regularity(e).singular:
        raise WeightError(f"{format_weight(e)} is singular; straightening is not canonical")
    n = len(e)
    steps = 0
    while True:
        moves = [i for i in range(n - 1) if e[i] < e[i + 1]]
        if e[-1] < 0:
            moves.append(n - 1)
        if not moves:
            return steps
        i = rng.choice(moves) if rng is not None else moves[0]
        if i == n - 1:
            e[-1] = -e[-1]
        else:
            e[i], e[i + 1] = e[i + 1], e[i]
        steps += 1


def _exact_div(num: int, den: int) -> int:
    q, r = divmod(num, den)
    if r:
        raise ArithmeticError(f"inexact division {num}/{den}")
    return q


def sp_dim(mu: SpWeight | Sequence[int]) -> int:
    """Weyl dimension formula for the irreducible Sp(2n) module V(mu)."""
    if not isinstance(mu, SpWeight):
        mu = SpWeight(tuple(mu))
    n = mu.n
    l = [mu[i] + n - i for i in range(n)]
    m = [n - i for i in range(n)]
    num = prod(l) * prod(l[i] ** 2 - l[j] ** 2 for i in range(n) for j in range(i + 1, n))
    den = prod(m) * prod(m[i] ** 2 - m[j] ** 2 for i in range(n) for j in range(i + 1, n))
    return _exact_div(num, den)


def gl_dim(lam: GLWeight | Sequence[int]) -> int:
    """Weyl dimension formula for the irreducible GL(n) module of highest weight lam."""
    e = lam.entries if isinstance(lam, AmbientVector) else tuple(lam)
    n = len(e)
    num = prod(e[i] - e[j] + j - i for i in range(n) for j in range(i + 1, n))
    den = prod(j - i for i in range(n) for j in range(i + 1, n))
    return _exact_div(num, den)
