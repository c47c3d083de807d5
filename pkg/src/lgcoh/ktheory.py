"""Characters of GL(n) modules and the registry of exact sequences.

A class in K_0 of the Levi is recorded by its character, a Laurent
polynomial in x_1..x_n.  Exact sequences, resolutions and filtrations are
checked by requiring the alternating sum of term characters to vanish.
"""

from __future__ import annotations

import ast
import json
import operator
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from typing import Callable, Iterable, Mapping

from . import expr as _expr
from . import kernels
from .lr import WeightSum
from .weights import GLWeight, RankMismatch, WeightError, check_rank


class Character:
    """Sparse Laurent polynomial {exponent tuple: coefficient} in n variables."""

    __slots__ = ("n", "_mono")

    def __init__(self, n: int, monomials: Mapping[tuple[int, ...], int] | None = None):
        if n < 1:
            raise WeightError(f"invalid rank {n}")
        self.n = n
        mono = {}
        for e, c in (monomials or {}).items():
            e = tuple(int(x) for x in e)
            if len(e) != n:
                raise RankMismatch(f"monomial {e} has {len(e)} variables, expected {n}")
            if c:
                mono[e] = mono.get(e, 0) + int(c)
        self._mono = {e: c for e, c in mono.items() if c}

    @classmethod
    def _raw(cls, n, mono):
        obj = cls.__new__(cls)
        obj.n = n
        obj._mono = mono
        return obj

    @classmethod
    def constant(cls, n: int, c: int = 1) -> "Character":
        return cls._raw(n, {(0,) * n: c} if c else {})

    @property
    def monomials(self) -> dict[tuple[int, ...], int]:
        return dict(self._mono)

    def __len__(self):
        return len(self._mono)

    def __bool__(self):
        return bool(self._mono)

    def is_zero(self) -> bool:
        return not self._mono

    def __eq__(self, other):
        if not isinstance(other, Character):
            return NotImplemented
        return self.n == other.n and self._mono == other._mono

    def __add__(self, other: "Character") -> "Character":
        check_rank(self.n, other.n)
        acc = dict(self._mono)
        for e, c in other._mono.items():
            v = acc.get(e, 0) + c
            if v:
                acc[e] = v
            else:
                acc.pop(e, None)
        return Character._raw(self.n, acc)

    def __neg__(self):
        return Character._raw(self.n, {e: -c for e, c in self._mono.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        check_rank(self.n, other.n)
        return Character._raw(self.n, kernels.laurent_mul(self._mono, other._mono))

    def __rmul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        return NotImplemented

    def scale(self, c: int) -> "Character":
        if not c:
            return Character(self.n)
        return Character._raw(self.n, {e: c * v for e, v in self._mono.items()})

    def dual(self) -> "Character":
        return Character._raw(self.n, {tuple(-x for x in e): c for e, c in self._mono.items()})

    def twist(self, i: int) -> "Character":
        return Character._raw(self.n, {tuple(x + i for x in e): c for e, c in self._mono.items()})

    def adams(self, k: int) -> "Character":
        """psi^k: substitute x_i -> x_i^k."""
        return Character._raw(self.n, {tuple(k * x for x in e): c for e, c in self._mono.items()})

    def value_at_ones(self) -> int:
        return sum(self._mono.values())

    def is_symmetric(self) -> bool:
        for e, c in self._mono.items():
            for i in range(self.n - 1):
                f = e[:i] + (e[i + 1], e[i]) + e[i + 2 :]
                if self._mono.get(f) != c:
                    return False
        return True

    def exact_div(self, d: int) -> "Character":
        out = {}
        for e, c in self._mono.items():
            q, r = divmod(c, d)
            if r:
                raise ArithmeticError(f"coefficient {c} not divisible by {d}")
            out[e] = q
        return Character._raw(self.n, out)

    def __str__(self):
        if not self._mono:
            return "0"
        terms = []
        for e, c in sorted(self._mono.items(), reverse=True):
            mono = "*".join(
                f"x{i + 1}" + (f"^{x}" if x != 1 else "") for i, x in enumerate(e) if x
            )
            if not mono:
                terms.append(str(c))
            elif c == 1:
                terms.append(mono)
            elif c == -1:
                terms.append("-" + mono)
            else:
                terms.append(f"{c}*{mono}")
        return " + ".join(terms).replace("+ -", "- ")

    def __repr__(self):
        return f"Character(n={self.n}, {len(self._mono)} terms)"


@lru_cache(maxsize=4096)
def _schur_cached(partition: tuple[int, ...], n: int):
    return tuple(kernels.schur_monomials(partition, n).items())


def clear_cache() -> None:
    kernels.clear_caches()


def char_weight(lam: GLWeight) -> Character:
    """Schur polynomial s_lam(x_1..x_n), times (x_1...x_n)^lam_n for negative entries."""
    n = lam.n
    s = lam.entries[-1]
    part = tuple(x - s for x in lam.entries if x - s)
    items = _schur_cached(part, n)
    if s:
        return Character._raw(n, {tuple(x + s for x in e): c for e, c in items})
    return Character._raw(n, dict(items))


def char_of_sum(x: WeightSum) -> Character:
    out = Character(x.n)
    for w, m in x.items():
        out = out + char_weight(w).scale(m)
    return out


def ambient_char(n: int) -> Character:
    """Character of V restricted to GL(n): sum of x_i + x_i^-1."""
    if n < 1:
        raise WeightError(f"invalid rank {n}")
    mono = {}
    for i in range(n):
        e = [0] * n
        e[i] = 1
        mono[tuple(e)] = 1
        e[i] = -1
        mono[tuple(e)] = 1
    return Character(n, mono)


def _power_ops(ch: Character, m: int, alternating: bool) -> list[Character]:
    """Newton recursion: [P_0, ..., P_m] for P = exterior (alternating) or symmetric powers."""
    n = ch.n
    out = [Character.constant(n)]
    psi = [None] + [ch.adams(k) for k in range(1, m + 1)]
    for j in range(1, m + 1):
        acc = Character(n)
        for i in range(1, j + 1):
            term = out[j - i] * psi[i]
            if alternating and i % 2 == 0:
                term = -term
            acc = acc + term
        out.append(acc.exact_div(j))
    return out


def wedge_power(ch: Character, m: int) -> Character:
    if m < 0:
        raise WeightError("negative exterior power")
    return _power_ops(ch, m, True)[m]


def sym_power(ch: Character, m: int) -> Character:
    if m < 0:
        raise WeightError("negative symmetric power")
    return _power_ops(ch, m, False)[m]


def rank_k0(n: int) -> int:
    """Rank of K_0(LG(n,2n)): the number of Schubert cells, 2^n."""
    if n < 1:
        raise WeightError(f"invalid rank {n}")
    return 2**n


def schur_class(entries: tuple[int, ...], n: int, twist: int = 0) -> WeightSum | None:
    """Class of S^entries Q(twist), or None when the Schur functor vanishes in rank n.

    Trailing zeros are implied; a partition with more than n nonzero parts
    gives the zero bundle (e.g. wedge^k Q for k > n).
    """
    e = tuple(entries)
    while len(e) > n and e and e[-1] == 0:
        e = e[:-1]
    if len(e) > n:
        if all(x >= 0 for x in e):
            return None
        raise _expr.ExprError(f"weight {e} has more than {n} entries")
    w = GLWeight.of(e, n)
    if twist:
        w = GLWeight(tuple(x + twist for x in w.entries))
    return WeightSum.single(w)


class _CharAlgebra:
    def __init__(self, n: int, resolve: Callable[[str, int], WeightSum] | None):
        self.n = n
        self.resolve = resolve
        self._amb = None

    def number(self, c):
        return Character.constant(self.n, c)

    def schur(self, entries, t):
        cls = schur_class(entries, self.n, t)
        return Character(self.n) if cls is None else char_of_sum(cls)

    def ambient(self, kind, power):
        if self._amb is None:
            self._amb = ambient_char(self.n)
        if kind == "V":
            return self._amb
        if kind == "Sym":
            return sym_power(self._amb, power)
        return wedge_power(self._amb, power)

    def named(self, name, t):
        if self.resolve is None:
            raise _expr.ExprError(f"unknown object {name!r}")
        return char_of_sum(self.resolve(name, t))

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def dual(self, a):
        return a.dual()

    def twist(self, a, i):
        return a.twist(i)


def char_expr(text: str, n: int, resolve=None) -> Character:
    """Character of an expression; V and its powers are allowed here."""
    if resolve is None:
        resolve = _default_resolver(n)
    return _expr.evaluate(_expr.parse(text), _CharAlgebra(n, resolve))


def _default_resolver(n: int):
    def resolve(name: str, t: int) -> WeightSum:
        from .objects import get_object

        return get_object(f"{name}({t})" if t else name, n).k_class()

    return resolve


# ---------------------------------------------------------------- registry

_OPS = {ast.Add: operator.add, ast.Sub: operator.sub, ast.Mult: operator.mul}


def arith(text: str, env: Mapping[str, int]) -> int:
    """Evaluate an integer expression over +, -, *, min, max and named parameters."""

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, int):
            return node.value
        if isinstance(node, ast.Name):
            if node.id not in env:
                raise KeyError(f"unbound parameter {node.id!r} in {text!r}")
            return env[node.id]
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, ast.USub):
            return -ev(node.operand)
        if isinstance(node, ast.BinOp) and type(node.op) in _OPS:
            return _OPS[type(node.op)](ev(node.left), ev(node.right))
        if isinstance(node, ast.Call) and isinstance(node.func, ast.Name) and node.func.id in ("min", "max"):
            return (min if node.func.id == "min" else max)(ev(a) for a in node.args)
        raise ValueError(f"unsupported arithmetic in {text!r}")

    return ev(ast.parse(str(text), mode="eval"))


def fill_template(template: str, env: Mapping[str, int]) -> str:
    out = []
    i = 0
    while i < len(template):
        j = template.find("{", i)
        if j < 0:
            out.append(template[i:])
            break
        k = template.index("}", j)
        out.append(template[i:j])
        out.append(str(arith(template[j + 1 : k], env)))
        i = k + 1
    return "".join(out)


@dataclass(frozen=True)
class Term:
    sign: int
    expr: str
    var: str | None = None
    lo: str | None = None
    hi: str | None = None
    alternate: bool = False

    def expand(self, env: Mapping[str, int]) -> list[tuple[int, str]]:
        if self.var is None:
            return [(self.sign, fill_template(self.expr, env))]
        out = []
        for v in range(arith(self.lo, env), arith(self.hi, env) + 1):
            e = dict(env)
            e[self.var] = v
            s = self.sign * ((-1) ** v if self.alternate else 1)
            out.append((s, fill_template(self.expr, e)))
        return out


@dataclass(frozen=True)
class SequenceSpec:
    """One registered identity: the signed sum of its terms vanishes in K_0."""

    id: str
    kind: str
    n_range: tuple[int, int]
    params: dict[str, tuple[str, str]]
    terms: tuple[Term, ...]
    anchor: str

    def param_sets(self, n: int) -> list[dict[str, int]]:
        sets = [{"n": n}]
        for p, (lo, hi) in self.params.items():
            nxt = []
            for env in sets:
                for v in range(arith(lo, env), arith(hi, env) + 1):
                    e = dict(env)
                    e[p] = v
                    nxt.append(e)
            sets = nxt
        return sets

    def valid_n(self, n: int) -> bool:
        lo, hi = self.n_range
        return lo <= n <= hi

    def label(self, env: Mapping[str, int]) -> str:
        args = ",".join(f"{p}={env[p]}" for p in self.params)
        return f"{self.id}({args})" if args else self.id


@dataclass
class SequenceReport:
    id: str
    n: int
    params: dict[str, int]
    ok: bool
    terms: list[tuple[int, str, int]] = field(default_factory=list)  # sign, expr, dim
    residual: Character | None = None

    def to_json(self) -> dict:
        return {
            "id": self.id,
            "n": self.n,
            "params": self.params,
            "ok": self.ok,
            "terms": [{"sign": s, "expr": e, "dim": d} for s, e, d in self.terms],
            "residual_terms": 0 if self.residual is None else len(self.residual),
        }


def _load_registry() -> dict[str, SequenceSpec]:
    raw = json.loads(resources.files("lgcoh").joinpath("data/sequences.json").read_text())
    out = {}
    for rec in raw["sequences"]:
        terms = []
        for t in rec["terms"]:
            rng = t.get("sum")
            terms.append(
                Term(
                    sign=int(t.get("sign", 1)),
                    expr=t["expr"],
                    var=rng["var"] if rng else None,
                    lo=str(rng["from"]) if rng else None,
                    hi=str(rng["to"]) if rng else None,
                    alternate=bool(t.get("alternate", False)),
                )
            )
        seq = SequenceSpec(
            id=rec["id"],
            kind=rec.get("kind", "complex"),
            n_range=(int(rec["n_range"][0]), int(rec["n_range"][1])),
            params={p: (str(r[0]), str(r[1])) for p, r in rec.get("params", {}).items()},
            terms=tuple(terms),
            anchor=rec["anchor"],
        )
        if seq.id in out:
            raise ValueError(f"duplicate sequence id {seq.id!r}")
        out[seq.id] = seq
    return out


_REGISTRY: dict[str, SequenceSpec] | None = None


def registry() -> dict[str, SequenceSpec]:
    global _REGISTRY
    if _REGISTRY is None:
        _REGISTRY = _load_registry()
    return _REGISTRY


def registry_version() -> str:
    raw = json.loads(resources.files("lgcoh").joinpath("data/sequences.json").read_text())
    return str(raw["version"])


class SequenceError(KeyError):
    pass


def verify_sequence(seq_id: str, n: int, **params: int) -> SequenceReport:
    """Check that the alternating character sum of a registered sequence is zero."""
    reg = registry()
    if seq_id not in reg:
        raise SequenceError(f"unknown sequence {seq_id!r}; known: {', '.join(sorted(reg))}")
    seq = reg[seq_id]
    if not seq.valid_n(n):
        raise SequenceError(f"{seq_id} is registered for n in [{seq.n_range[0]},{seq.n_range[1]}], got {n}")
    env = {"n": n}
    for p, (lo, hi) in seq.params.items():
        if p not in params:
            raise SequenceError(f"{seq_id} needs parameter {p}")
        v = int(params[p])
        lo_v, hi_v = arith(lo, env), arith(hi, env)
        if not lo_v <= v <= hi_v:
            raise SequenceError(f"{seq_id}: {p}={v} outside [{lo_v},{hi_v}] at n={n}")
        env[p] = v
    extra = set(params) - set(seq.params)
    if extra:
        raise SequenceError(f"{seq_id} takes no parameter {', '.join(sorted(extra))}")
    resolve = _default_resolver(n)
    total = Character(n)
    rows = []
    for term in seq.terms:
        for sign, text in term.expand(env):
            ch = char_expr(text, n, resolve)
            rows.append((sign, text, ch.value_at_ones()))
            total = total + ch.scale(sign)
    return SequenceReport(seq_id, n, {p: env[p] for p in seq.params}, total.is_zero(), rows, total)


def verify_all(ns: Iterable[int] | None = None) -> list[SequenceReport]:
    """Every registered identity at every declared n and parameter value."""
    out = []
    for seq in registry().values():
        lo, hi = seq.n_range
        for n in range(lo, hi + 1):
            if ns is not None and n not in ns:
                continue
            for env in seq.param_sets(n):
                ps = {p: env[p] for p in seq.params}
                out.append(verify_sequence(seq.id, n, **ps))
    return out


# ------------------------------------------------ Sp(2n) -> GL(n) branching


def sp_character(mu) -> Character:
    """Character of the irreducible Sp(2n) module V(mu), restricted to the torus.

    Sums over symplectic (King) tableaux: semistandard fillings of shape mu
    in the alphabet 1 < 1' < 2 < 2' < ... < n < n', where entries of row r
    are at least r.  A letter i contributes x_i and i' contributes x_i^-1.
    """
    from .weights import SpWeight

    if not isinstance(mu, SpWeight):
        mu = SpWeight(tuple(mu))
    return _sp_character_cached(mu.entries)


@lru_cache(maxsize=1024)
def _sp_character_cached(mu: tuple[int, ...]) -> Character:
    n = len(mu)
    shape = [x for x in mu if x]
    cells = [(r, c) for r, length in enumerate(shape) for c in range(length)]
    grid: dict[tuple[int, int], int] = {}
    expo = [0] * n
    acc: dict[tuple[int, ...], int] = {}

    def rec(idx):
        if idx == len(cells):
            e = tuple(expo)
            acc[e] = acc.get(e, 0) + 1
            return
        r, c = cells[idx]
        lo = 2 * r  # letter r+1 (unbarred) in 0-based encoding
        if c > 0:
            lo = max(lo, grid[(r, c - 1)])
        if r > 0:
            lo = max(lo, grid[(r - 1, c)] + 1)
        for letter in range(lo, 2 * n):
            grid[(r, c)] = letter
            i, barred = divmod(letter, 2)
            expo[i] += -1 if barred else 1
            rec(idx + 1)
            expo[i] -= -1 if barred else 1
        grid.pop((r, c), None)

    rec(0)
    return Character(n, acc)


def gl_decompose(ch: Character) -> WeightSum:
    """Write a symmetric character as an integer combination of Schur characters.

    Repeatedly strips the lexicographically largest monomial, which is the
    highest weight of some irreducible constituent.
    """
    n = ch.n
    rest = ch
    terms: dict[GLWeight, int] = {}
    while rest:
        top = max(rest.monomials)
        if any(top[i] < top[i + 1] for i in range(n - 1)):
            raise ValueError("character is not symmetric")
        c = rest.monomials[top]
        w = GLWeight(top)
        terms[w] = terms.get(w, 0) + c
        rest = rest - char_weight(w).scale(c)
    return WeightSum(n, terms)


def restrict_sp(rep: Mapping, n: int) -> WeightSum:
    """Restrict a virtual Sp(2n) module {SpWeight: mult} to the Levi GL(n)."""
    total = Character(n)
    for mu, m in rep.items():
        total = total + sp_character(mu).scale(m)
    return gl_decompose(total)


def ambient_class(n: int) -> WeightSum:
    """V restricted to GL(n), as the class Q + Q*."""
    return gl_decompose(ambient_char(n))
