"""Text grammar for bundle expressions.

Examples::

    S(3,1,1)            Schur bundle, trailing zeros implied
    wedge^2(1)          wedge^2 Q twisted by O(1)
    Sym^3               S^3 Q
    O(-2), Q, U         U is the tautological subbundle Q*
    R_1, T              S^(2,1) Q and S^(3,1,1) Q
    dual(R_1)*O(1)      tensor products with '*'
    2*Q + wedge^2 - O   integer combinations
    Sym^2(V)*Q          powers of the fixed module V (character level only)
    F_1(2), E_1         named filtered objects, resolved by the caller

Parsing produces a small AST; ``evaluate`` folds it with an algebra
object so the same grammar drives both K-classes and characters.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Protocol


class ExprError(ValueError):
    """Malformed expression or an atom the evaluating algebra cannot handle."""


@dataclass(frozen=True)
class Num:
    value: int


@dataclass(frozen=True)
class Schur:
    entries: tuple[int, ...]
    twist: int = 0


@dataclass(frozen=True)
class Ambient:
    """The fixed Sp(2n) module V or one of its powers: kind in {'V', 'Sym', 'wedge'}."""

    kind: str
    power: int = 1


@dataclass(frozen=True)
class Named:
    name: str
    twist: int = 0


@dataclass(frozen=True)
class Dual:
    arg: object


@dataclass(frozen=True)
class Tensor:
    factors: tuple


@dataclass(frozen=True)
class Sum:
    terms: tuple  # of (sign, node)


@dataclass(frozen=True)
class Twisted:
    arg: object
    twist: int


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z][A-Za-z0-9_]*)|(\S))")


def _tokenize(text: str) -> list[tuple[str, str]]:
    out = []
    pos = 0
    text = re.sub(r"∧\^?", "wedge^", text).replace("⊗", "*")
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            break
        pos = m.end()
        if m.group(1):
            out.append(("int", m.group(1)))
        elif m.group(2):
            out.append(("name", m.group(2)))
        elif m.group(3):
            out.append(("op", m.group(3)))
    return out


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    def error(self, msg: str):
        return ExprError(f"{msg} in {self.text!r}")

    def peek(self, k: int = 0):
        j = self.i + k
        return self.toks[j] if j < len(self.toks) else ("eof", "")

    def take(self, kind=None, value=None):
        tok = self.peek()
        if kind and tok[0] != kind or value and tok[1] != value:
            want = value or kind
            raise self.error(f"expected {want!r}, got {tok[1] or 'end of input'!r}")
        self.i += 1
        return tok

    def at(self, value) -> bool:
        return self.peek()[1] == value and self.peek()[0] != "eof"

    def parse(self):
        if not self.toks:
            raise ExprError("empty expression")
        node = self.sum()
        if self.peek()[0] != "eof":
            raise self.error(f"unexpected {self.peek()[1]!r}")
        return node

    def sum(self):
        terms = []
        sign = 1
        if self.at("-"):
            self.take()
            sign = -1
        elif self.at("+"):
            self.take()
        terms.append((sign, self.product()))
        while self.at("+") or self.at("-"):
            sign = 1 if self.take()[1] == "+" else -1
            terms.append((sign, self.product()))
        if len(terms) == 1 and terms[0][0] == 1:
            return terms[0][1]
        return Sum(tuple(terms))

    def product(self):
        factors = [self.factor()]
        while self.at("*"):
            self.take()
            factors.append(self.factor())
        return factors[0] if len(factors) == 1 else Tensor(tuple(factors))

    def signed_int(self) -> int:
        sign = 1
        if self.at("-"):
            self.take()
            sign = -1
        elif self.at("+"):
            self.take()
        return sign * int(self.take("int")[1])

    def opt_twist(self) -> int:
        # a parenthesized integer right after an atom twists it
        if self.at("("):
            k = 1
            if self.peek(1)[1] in "+-" and self.peek(1)[0] == "op":
                k = 2
            if self.peek(k)[0] == "int" and self.peek(k + 1)[1] == ")":
                self.take()
                t = self.signed_int()
                self.take("op", ")")
                return t
        return 0

    def factor(self):
        kind, val = self.peek()
        if kind == "int":
            self.take()
            return Num(int(val))
        if val == "(" and kind == "op":
            self.take()
            node = self.sum()
            self.take("op", ")")
            t = self.opt_twist()
            return Twisted(node, t) if t else node
        if kind != "name":
            raise self.error(f"unexpected {val or 'end of input'!r}")
        self.take()
        if val == "dual":
            self.take("op", "(")
            node = self.sum()
            self.take("op", ")")
            t = self.opt_twist()
            return Twisted(Dual(node), t) if t else Dual(node)
        if val == "S":
            self.take("op", "(")
            entries = [self.signed_int()]
            while self.at(","):
                self.take()
                entries.append(self.signed_int())
            self.take("op", ")")
            return Schur(tuple(entries), self.opt_twist())
        if val in ("wedge", "Sym"):
            self.take("op", "^")
            k = int(self.take("int")[1])
            if self.at("(") and self.peek(1) == ("name", "V"):
                self.take()
                self.take()
                self.take("op", ")")
                return Ambient(val, k)
            t = self.opt_twist()
            if val == "wedge":
                return Schur((1,) * k, t)
            return Schur((k,), t)
        if val == "O":
            return Schur((), self.opt_twist())
        if val == "Q":
            return Schur((1,), self.opt_twist())
        if val == "U":
            t = self.opt_twist()
            return Twisted(Dual(Schur((1,))), t) if t else Dual(Schur((1,)))
        if val == "V":
            return Ambient("V", 1)
        if val == "T":
            return Schur((3, 1, 1), self.opt_twist())
        m = re.fullmatch(r"R_(\d+)", val)
        if m:
            k = int(m.group(1))
            return Schur((2,) + (1,) * k, self.opt_twist())
        return Named(val, self.opt_twist())


def parse(text: str):
    """Parse an expression into an AST."""
    return _Parser(text).parse()


class Algebra(Protocol):
    def number(self, c: int): ...
    def schur(self, entries: tuple[int, ...], twist: int): ...
    def ambient(self, kind: str, power: int): ...
    def named(self, name: str, twist: int): ...
    def add(self, a, b): ...
    def neg(self, a): ...
    def mul(self, a, b): ...
    def dual(self, a): ...
    def twist(self, a, i: int): ...


def evaluate(node, alg: Algebra):
    if isinstance(node, Num):
        return alg.number(node.value)
    if isinstance(node, Schur):
        return alg.schur(node.entries, node.twist)
    if isinstance(node, Ambient):
        return alg.ambient(node.kind, node.power)
    if isinstance(node, Named):
        return alg.named(node.name, node.twist)
    if isinstance(node, Dual):
        return alg.dual(evaluate(node.arg, alg))
    if isinstance(node, Twisted):
        return alg.twist(evaluate(node.arg, alg), node.twist)
    if isinstance(node, Tensor):
        acc = evaluate(node.factors[0], alg)
        for f in node.factors[1:]:
            acc = alg.mul(acc, evaluate(f, alg))
        return acc
    if isinstance(node, Sum):
        acc = None
        for sign, t in node.terms:
            v = evaluate(t, alg)
            if sign < 0:
                v = alg.neg(v)
            acc = v if acc is None else alg.add(acc, v)
        return acc
    raise ExprError(f"unknown node {node!r}")
