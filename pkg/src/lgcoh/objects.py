"""Filtered objects (iterated extensions of Schur bundles) and their Hom bounds.

An object is recorded by the ordered graded pieces of a filtration.  Its
class in K_0 is the sum of the pieces; Hom spaces between such objects
are bounded above piece by piece, and are exact when both sides are a
single piece.
"""

from __future__ import annotations

import enum
import json
import re
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources

from .bott import graded_dim
from .homalg import BundleExpr, euler_class, euler_form, hom_graded, parse_bundle, schur
from .ktheory import arith, fill_template, restrict_sp
from .lr import RepSum, WeightSum, tensor
from .weights import SpWeight, WeightError, check_rank


class ObjectError(WeightError):
    """Unknown object name or an object requested outside its range."""


class CertificationError(AssertionError):
    """A claim's mandatory side condition failed: an engine or transcription bug."""


@dataclass(frozen=True)
class FilteredObject:
    """A named object with graded pieces listed from sub to quotient."""

    name: str
    pieces: tuple[BundleExpr, ...]
    provenance: tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self):
        if not self.pieces:
            raise ObjectError(f"{self.name}: an object needs at least one piece")
        check_rank(*(p.n for p in self.pieces))

    @property
    def n(self) -> int:
        return self.pieces[0].n

    @property
    def single_piece(self) -> bool:
        return len(self.pieces) == 1

    def k_class(self) -> RepSum:
        acc = RepSum.zero(self.n)
        for p in self.pieces:
            acc = acc + p.sum
        return acc

    def twist(self, i: int) -> "FilteredObject":
        if i == 0:
            return self
        base, t = split_twist(self.name)
        name = f"{base}({t + i})" if t + i else base
        return FilteredObject(
            name,
            tuple(BundleExpr(p.sum.twist(i), p.label) for p in self.pieces),
            self.provenance,
        )

    def describe(self) -> dict:
        return {
            "name": self.name,
            "n": self.n,
            "pieces": [{"label": p.label, "class": str(p.sum)} for p in self.pieces],
            "k_class": str(self.k_class()),
            "provenance": list(self.provenance),
        }


_TWIST_RE = re.compile(r"^(?P<base>.*?)(?:\((?P<t>[+-]?\d+)\))?$")


def split_twist(name: str) -> tuple[str, int]:
    m = _TWIST_RE.match(name.strip())
    base = m.group("base")
    t = int(m.group("t")) if m.group("t") else 0
    return base, t


def _piece(text: str, n: int) -> BundleExpr:
    return parse_bundle(text, n)


def _check_k(k: int, n: int, what: str):
    if not 1 <= k <= n - 3:
        raise ObjectError(f"{what} needs k in [1,{n - 3}] at n={n}, got k={k}")


def _base_object(base: str, n: int) -> FilteredObject:
    """Untwisted object by name; raises ObjectError if unknown or out of range."""
    if n < 3:
        raise ObjectError(f"objects are defined for n >= 3, got {n}")
    m = re.fullmatch(r"([A-Za-z]+)(?:_(\d+)|\^(\d+))?", base)
    if not m:
        raise ObjectError(f"unknown object {base!r}")
    head = m.group(1)
    k = int(m.group(2) or m.group(3)) if (m.group(2) or m.group(3)) else None
    if head == "O" and k is None:
        return FilteredObject("O", (schur((), n, label="O"),))
    if head == "Q" and k is None:
        return FilteredObject("Q", (schur((1,), n, label="Q"),))
    if head == "wedge" and m.group(3):
        if not 0 <= k <= n:
            raise ObjectError(f"wedge^{k} Q needs k in [0,{n}]")
        return FilteredObject(f"wedge^{k}", (schur((1,) * k, n, label=f"wedge^{k}"),))
    if head == "R" and m.group(2):
        if not 0 <= k <= n - 1:
            raise ObjectError(f"R_{k} needs k in [0,{n - 1}]")
        return FilteredObject(f"R_{k}", (schur((2,) + (1,) * k, n, label=f"R_{k}"),))
    if head == "S" and m.group(2):
        _check_k(k, n, "S_k")
        return FilteredObject(
            f"S_{k}",
            (_piece(f"U*wedge^{k + 1}", n), _piece(f"wedge^{k + 2}", n)),
            ("S-seq",),
        )
    if head == "E" and m.group(2):
        _check_k(k, n, "E_k")
        return FilteredObject(
            f"E_{k}",
            (_piece(f"dual(R_{n - 2 - k})(1)", n), _piece(f"wedge^{k + 2}", n)),
            ("E-pieces-seq", "QSE-seq"),
        )
    if head == "F" and m.group(2):
        _check_k(k, n, "F_k")
        return FilteredObject(f"F_{k}", (_piece(f"wedge^{k}", n), _piece(f"R_{k}", n)), ("FR-seq",))
    if head in ("T", "P", "G") and k is None:
        if n != 5:
            raise ObjectError(f"{head} is defined on LG(5,10) only, got n={n}")
        if head == "T":
            return FilteredObject("T", (schur((3, 1, 1), n, label="T"),))
        if head == "P":
            return FilteredObject("P", (_piece("R_1", n), _piece("T", n)), ("PT-seq",))
        return FilteredObject("G", (_piece("wedge^3", n), _piece("R_1", n), _piece("T", n)), ("PG-seq", "PT-seq"))
    raise ObjectError(f"unknown object {base!r}")


def _split_class(name: str, t: int, n: int):
    obj = _base_object(name, n)
    if not obj.single_piece:
        raise ObjectError(f"{name} is a nonsplit extension and cannot appear inside a bundle expression")
    return obj.twist(t).k_class()


@lru_cache(maxsize=4096)
def get_object(name: str, n: int) -> FilteredObject:
    """Look up an object such as ``F_1(2)``, ``wedge^2(-1)`` or ``T``.

    Names outside the registry are parsed as bundle expressions and
    returned as single-piece objects.
    """
    base, t = split_twist(name)
    try:
        obj = _base_object(base, n)
    except ObjectError as err:
        if not str(err).startswith("unknown object"):
            raise
        try:
            b = parse_bundle(name, n, resolve=lambda nm, tw: _split_class(nm, tw, n))
        except ObjectError:
            raise
        except ValueError as perr:
            raise ObjectError(f"unknown object {base!r} and not a bundle expression: {perr}") from None
        return FilteredObject(name, (b,))
    return obj.twist(t)


def registry(n: int) -> dict[str, FilteredObject]:
    """All named objects at rank n, with twists O(i) for i in [0, n+1]."""
    if n < 3:
        raise ObjectError(f"registry needs n >= 3, got {n}")
    bases = ["O", "Q"] + [f"wedge^{k}" for k in range(2, n)]
    bases += [f"R_{k}" for k in range(1, n - 2)]
    for k in range(1, n - 2):
        bases += [f"S_{k}", f"E_{k}", f"F_{k}"]
    if n == 5:
        bases += ["T", "P", "G"]
    out = {}
    for b in bases:
        for i in range(0, n + 2):
            obj = get_object(f"{b}({i})" if i else b, n)
            out[obj.name] = obj
    return out


def k_class(x: FilteredObject) -> RepSum:
    return x.k_class()


class Status(str, enum.Enum):
    CERTIFIED_VANISHING = "CERTIFIED_VANISHING"
    CERTIFIED_EXACT = "CERTIFIED_EXACT"
    BOUNDED = "BOUNDED"
    PAPER_ASSERTED = "PAPER_ASSERTED"

    def __str__(self):
        return self.value


class Claim(str, enum.Enum):
    VANISHING = "vanishing"
    EXCEPTIONAL = "exceptional"


@dataclass(frozen=True)
class HomBoundReport:
    upper: dict[int, int]
    euler: int
    status: Status

    def __post_init__(self):
        even = sum(v for d, v in self.upper.items() if d % 2 == 0)
        odd = sum(v for d, v in self.upper.items() if d % 2)
        if not -odd <= self.euler <= even:
            raise CertificationError(f"Euler characteristic {self.euler} outside the bounds {self.upper}")
        if (self.status is Status.CERTIFIED_VANISHING) != (not self.upper):
            raise CertificationError("CERTIFIED_VANISHING must coincide with zero upper bounds")

    def to_json(self) -> dict:
        return {
            "upper": {str(d): v for d, v in sorted(self.upper.items())},
            "euler": self.euler,
            "status": self.status.value,
        }


def _as_object(x, n=None) -> FilteredObject:
    if isinstance(x, FilteredObject):
        return x
    if isinstance(x, BundleExpr):
        return FilteredObject(x.label or str(x.sum), (x,))
    if isinstance(x, str):
        if n is None:
            raise TypeError("rank needed to look up an object by name")
        return get_object(x, n)
    raise TypeError(f"expected a filtered object, got {type(x).__name__}")


def hom_bounds(a, b) -> HomBoundReport:
    """Piecewise upper bounds on dim Hom^d(A, B), and the exact Euler form."""
    a, b = _as_object(a), _as_object(b)
    check_rank(a.n, b.n)
    upper: dict[int, int] = {}
    for pa in a.pieces:
        for pb in b.pieces:
            for d, v in graded_dim(hom_graded(pa, pb)).items():
                upper[d] = upper.get(d, 0) + v
    euler = euler_form(a.k_class(), b.k_class())
    if not upper:
        status = Status.CERTIFIED_VANISHING
    elif a.single_piece and b.single_piece:
        status = Status.CERTIFIED_EXACT
    else:
        status = Status.BOUNDED
    return HomBoundReport(upper, euler, status)


def is_trivial_endomorphisms(x: FilteredObject) -> bool:
    h = hom_graded(x.pieces[0], x.pieces[0])
    return h.components == {0: {SpWeight.zero(x.n): 1}}


@dataclass(frozen=True)
class Verdict:
    status: Status
    report: HomBoundReport

    def to_json(self) -> dict:
        d = self.report.to_json()
        d["status"] = self.status.value
        return d


def certify(a, b, claim: Claim | str) -> Verdict:
    """Check a claimed vanishing Hom^*(A,B) = 0 or exceptionality of A (= B).

    Vanishing is certified when the piecewise bounds are zero.  Otherwise a
    claim about filtered objects is recorded as asserted, and its Euler
    shadow (0 for vanishing, 1 for exceptionality) is enforced.  For single
    pieces the computation is exact, so a nonzero answer is a hard error.
    """
    a, b = _as_object(a), _as_object(b)
    claim = Claim(claim)
    rep = hom_bounds(a, b)
    if claim is Claim.VANISHING:
        if rep.status is Status.CERTIFIED_VANISHING:
            return Verdict(rep.status, rep)
        if rep.status is Status.CERTIFIED_EXACT:
            raise CertificationError(f"Hom^*({a.name}, {b.name}) = {rep.upper} is not zero")
        if rep.euler != 0:
            raise CertificationError(f"Hom^*({a.name}, {b.name}) claimed zero but chi = {rep.euler}")
        return Verdict(Status.PAPER_ASSERTED, rep)
    if a != b:
        raise CertificationError(f"exceptionality is a claim about one object, got {a.name} and {b.name}")
    if a.single_piece:
        if not is_trivial_endomorphisms(a):
            raise CertificationError(f"{a.name} is not exceptional: Hom^* = {hom_graded(a.pieces[0], a.pieces[0])}")
        return Verdict(Status.CERTIFIED_EXACT, rep)
    if rep.euler != 1:
        raise CertificationError(f"{a.name} claimed exceptional but chi = {rep.euler}")
    return Verdict(Status.PAPER_ASSERTED, rep)


def equivariant_euler(a, b) -> dict[SpWeight, int]:
    """sum_i (-1)^i Hom^i(A, B) as a virtual Sp(2n) module, computed from K-classes."""
    a, b = _as_object(a), _as_object(b)
    return euler_class(a.k_class(), b.k_class())


def right_mutation_class(a, b) -> WeightSum:
    """[R_B A] = [Hom^*(A,B)^* (x) B] - [A], as a virtual class over GL(n).

    Hom^*(A,B) is an Sp(2n) module, so it is restricted to GL(n) before
    tensoring; a bare multiplicity chi(A,B) would lose that structure.
    """
    a, b = _as_object(a), _as_object(b)
    n = check_rank(a.n, b.n)
    hom = restrict_sp(equivariant_euler(a, b), n).dual()
    return tensor(hom, b.k_class()) - a.k_class()


def scalar_mutation_class(a, b) -> WeightSum:
    """chi(A,B)[B] - [A], treating the Hom space as a trivial module."""
    a, b = _as_object(a), _as_object(b)
    return b.k_class().scale(euler_form(a.k_class(), b.k_class())) - a.k_class()


def format_sp(rep: dict[SpWeight, int]) -> str:
    if not rep:
        return "0"
    parts = []
    for w, m in sorted(rep.items(), reverse=True):
        s = "V(" + ",".join(str(x) for x in w.entries) + ")"
        parts.append(s if m == 1 else f"{m}*{s}")
    return " + ".join(parts).replace("+ -", "- ")


# ------------------------------------------------------------ claims table


@dataclass(frozen=True)
class ClaimRecord:
    id: str
    n: int
    src: str
    dst: str
    claim: Claim
    statement: str


def claims_table() -> list[ClaimRecord]:
    raw = json.loads(resources.files("lgcoh").joinpath("data/claims.json").read_text())
    out = []
    for rec in raw["claims"]:
        ns = rec["n"] if isinstance(rec["n"], list) else [rec["n"]]
        for n in ns:
            for env in _expand_params(rec.get("params", {}), n):
                out.append(
                    ClaimRecord(
                        id=rec["id"],
                        n=n,
                        src=fill_template(rec["src"], env),
                        dst=fill_template(rec["dst"], env),
                        claim=Claim(rec["claim"]),
                        statement=rec["statement"],
                    )
                )
    return out


def _expand_params(params: dict, n: int) -> list[dict[str, int]]:
    sets = [{"n": n}]
    for p, (lo, hi) in params.items():
        nxt = []
        for env in sets:
            for v in range(arith(str(lo), env), arith(str(hi), env) + 1):
                e = dict(env)
                e[p] = v
                nxt.append(e)
        sets = nxt
    return sets


def check_claims(records=None) -> list[tuple[ClaimRecord, Verdict]]:
    """Evaluate every registered claim; raises CertificationError on a failed side condition."""
    out = []
    for rec in records if records is not None else claims_table():
        a = get_object(rec.src, rec.n)
        b = get_object(rec.dst, rec.n)
        out.append((rec, certify(a, b, rec.claim)))
    return out
