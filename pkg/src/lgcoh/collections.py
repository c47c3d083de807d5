"""Exceptional collections on LG(4,8) and LG(5,10), and the verification driver.

For a collection (X_1, ..., X_m) the driver checks Hom^*(X_i, X_j) = 0 for
i > j through ``objects.certify``, checks exceptionality of every X_i,
and builds the Euler matrix chi(X_i, X_j), which must be upper
unitriangular.  The lemma suite reproduces the individual Hom
computations that the collections are built from.
"""

from __future__ import annotations

import json
import os
import re
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .bott import GradedSpRep, graded_dim
from .homalg import euler_form, hom_graded
from .ktheory import arith, fill_template, rank_k0
from .objects import (
    CertificationError,
    Claim,
    FilteredObject,
    Status,
    certify,
    claims_table,
    equivariant_euler,
    format_sp,
    get_object,
    right_mutation_class,
)
from .weights import SpWeight, WeightError


class CollectionError(KeyError):
    pass


@dataclass(frozen=True)
class Collection:
    name: str
    n: int
    names: tuple[str, ...]

    @property
    def objects(self) -> list[FilteredObject]:
        return [get_object(x, self.n) for x in self.names]

    def __len__(self):
        return len(self.names)

    def __getitem__(self, i) -> FilteredObject:
        return get_object(self.names[i], self.n)


def _twisted(block: list[str], j: int) -> list[str]:
    return [b if j == 0 else f"{b}({j})" for b in block]


def _lg48() -> Collection:
    names = ["O", "E_1", "Q", "wedge^2"]
    for j in range(1, 5):
        names += _twisted(["O", "Q", "wedge^2"], j)
    return Collection("lg48", 4, tuple(names))


def _lg510() -> Collection:
    a = ["O", "Q", "wedge^2", "F_1", "wedge^3", "G"]
    b = ["O", "Q", "wedge^2", "F_1", "wedge^3"]
    names = []
    for block, j in ((a, 0), (b, 1), (b, 2), (a, 3), (b, 4), (b, 5)):
        names += _twisted(block, j)
    return Collection("lg510", 5, tuple(names))


_COLLECTIONS = {"lg48": _lg48, "lg510": _lg510}


def collection_names() -> list[str]:
    return sorted(_COLLECTIONS)


def collection(name: str) -> Collection:
    if name not in _COLLECTIONS:
        raise CollectionError(f"unknown collection {name!r}; known: {', '.join(collection_names())}")
    c = _COLLECTIONS[name]()
    if len(c) != rank_k0(c.n):
        raise AssertionError(f"{name} has {len(c)} objects, expected {rank_k0(c.n)}")
    return c


# ------------------------------------------------------------- the driver


@dataclass(frozen=True)
class PairResult:
    src: int
    dst: int
    src_name: str
    dst_name: str
    status: Status
    euler: int

    def to_json(self) -> dict:
        return {"src": self.src, "dst": self.dst, "status": self.status.value, "euler": self.euler}


@dataclass(frozen=True)
class PairFailure:
    src: int
    dst: int
    src_name: str
    dst_name: str
    message: str

    def to_json(self) -> dict:
        return {"src": self.src, "dst": self.dst, "src_name": self.src_name,
                "dst_name": self.dst_name, "error": self.message}


@dataclass
class VerificationReport:
    collection: str
    n: int
    names: list[str]
    pairs: list[PairResult]
    objects: list[PairResult]
    gram: list[list[int]]
    unitriangular: bool
    golden: list[tuple[int, int]] | None = None
    failures: list[PairFailure] = field(default_factory=list)

    def raise_for_failures(self) -> None:
        if self.failures:
            lines = [f"({f.src}, {f.dst}) = ({f.src_name}, {f.dst_name}): {f.message}" for f in self.failures]
            raise CertificationError(f"{self.collection}: " + "; ".join(lines))

    def asserted(self) -> list[tuple[int, int]]:
        return [(p.src, p.dst) for p in self.pairs if p.status is Status.PAPER_ASSERTED]

    def drift(self) -> bool:
        return self.golden is not None and sorted(self.golden) != sorted(self.asserted())

    def counts(self) -> dict[str, int]:
        out: dict[str, int] = {}
        for p in self.pairs:
            out[p.status.value] = out.get(p.status.value, 0) + 1
        return out

    def to_json(self) -> dict:
        return {
            "collection": self.collection,
            "n": self.n,
            "names": self.names,
            "pairs": [p.to_json() for p in self.pairs],
            "objects": [
                {"index": p.src, "name": p.src_name, "status": p.status.value, "euler": p.euler}
                for p in self.objects
            ],
            "gram": self.gram,
            "unitriangular": self.unitriangular,
            "failures": [f.to_json() for f in self.failures],
            "asserted_drift": self.drift(),
            "summary": self.counts(),
        }


def _check_pair(task):
    n, i, j, a, b = task
    A, B = get_object(a, n), get_object(b, n)
    claim = Claim.EXCEPTIONAL if i == j else Claim.VANISHING
    try:
        v = certify(A, B, claim)
    except CertificationError as err:
        return PairFailure(i, j, a, b, str(err))
    return PairResult(i, j, a, b, v.status, v.report.euler)


def _gram_row(task):
    n, names, i = task
    A = get_object(names[i], n)
    return [euler_form(A.k_class(), get_object(b, n).k_class()) for b in names]


def _run(fn, tasks, jobs):
    if jobs is None:
        jobs = os.cpu_count() or 1
    if jobs <= 1 or len(tasks) < 2:
        return [fn(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=jobs) as ex:
        return list(ex.map(fn, tasks, chunksize=max(1, len(tasks) // (4 * jobs))))


def gram_matrix(name: str, jobs: int | None = 1) -> tuple[list[list[int]], bool]:
    """Euler matrix M[i][j] = chi(X_i, X_j) and whether it is upper unitriangular."""
    c = collection(name)
    rows = _run(_gram_row, [(c.n, c.names, i) for i in range(len(c))], jobs)
    return rows, is_unitriangular(rows)


def is_unitriangular(m: list[list[int]]) -> bool:
    k = len(m)
    return all(m[i][i] == 1 for i in range(k)) and all(m[i][j] == 0 for i in range(k) for j in range(i))


def determinant(m: list[list[int]]) -> int:
    """Exact integer determinant by fraction-free (Bareiss) elimination."""
    a = [list(r) for r in m]
    k = len(a)
    sign, prev = 1, 1
    for c in range(k - 1):
        if a[c][c] == 0:
            for r in range(c + 1, k):
                if a[r][c]:
                    a[c], a[r] = a[r], a[c]
                    sign = -sign
                    break
            else:
                return 0
        for r in range(c + 1, k):
            for s in range(c + 1, k):
                a[r][s] = (a[r][s] * a[c][c] - a[r][c] * a[c][s]) // prev
        prev = a[c][c]
    return sign * a[-1][-1] if k else 1


def verify_semiorthogonality(name: str, jobs: int | None = 1) -> VerificationReport:
    """Run every pairwise and diagonal claim of a collection, in collection order.

    Pairs whose Euler side condition fails are collected in ``failures``;
    call ``raise_for_failures`` to turn them into a CertificationError.
    """
    c = collection(name)
    names = list(c.names)
    tasks = [(c.n, i, j, names[i], names[j]) for i in range(len(names)) for j in range(i)]
    diag = [(c.n, i, i, names[i], names[i]) for i in range(len(names))]
    results = _run(_check_pair, tasks + diag, jobs)
    failures = [r for r in results if isinstance(r, PairFailure)]
    pairs = [r for r in results[: len(tasks)] if isinstance(r, PairResult)]
    objs = [r for r in results[len(tasks) :] if isinstance(r, PairResult)]
    gram, ok = gram_matrix(name, jobs)
    return VerificationReport(name, c.n, names, pairs, objs, gram, ok, load_golden(name), failures)


# -------------------------------------------------------------- golden set


def _golden_path(name: str):
    return resources.files("lgcoh").joinpath(f"data/golden/{name}_asserted.json")


def load_golden(name: str) -> list[tuple[int, int]] | None:
    p = _golden_path(name)
    if not p.is_file():
        return None
    raw = json.loads(p.read_text())
    return [(int(r["src"]), int(r["dst"])) for r in raw["asserted"]]


def golden_payload(report: VerificationReport) -> dict:
    return {
        "collection": report.collection,
        "n": report.n,
        "asserted": [
            {"src": p.src, "dst": p.dst, "src_name": p.src_name, "dst_name": p.dst_name, "euler": p.euler}
            for p in report.pairs
            if p.status is Status.PAPER_ASSERTED
        ],
    }


def write_golden(name: str, path: str | os.PathLike) -> Path:
    """Freeze the current asserted set of a collection to ``path``."""
    report = verify_semiorthogonality(name)
    out = Path(path)
    out.write_text(json.dumps(golden_payload(report), indent=1, sort_keys=True) + "\n")
    return out


# ------------------------------------------------------------- lemma suite


class LemmaError(KeyError):
    pass


_FUND = re.compile(r"^(\d*)w(\d+)$")


def parse_sp(text: str, n: int) -> SpWeight:
    """'2w1+w2' -> 2*omega_1 + omega_2; 'k' is the trivial weight."""
    text = text.replace(" ", "")
    if text in ("k", "0"):
        return SpWeight.zero(n)
    v = [0] * n
    for part in text.split("+"):
        m = _FUND.match(part)
        if not m:
            raise WeightError(f"cannot parse Sp weight {text!r}")
        c = int(m.group(1) or 1)
        i = int(m.group(2))
        if not 1 <= i <= n:
            raise WeightError(f"fundamental weight w{i} out of range at n={n}")
        for t in range(i):
            v[t] += c
    return SpWeight(tuple(v))


@dataclass
class LemmaResult:
    lemma: str
    n: int
    what: str
    ok: bool
    expected: str = ""
    computed: str = ""

    def to_json(self) -> dict:
        return {
            "lemma": self.lemma,
            "n": self.n,
            "check": self.what,
            "ok": self.ok,
            "expected": self.expected,
            "computed": self.computed,
        }


def _lemma_records() -> list[dict]:
    raw = json.loads(resources.files("lgcoh").joinpath("data/lemmas.json").read_text())
    return raw["checks"]


def lemma_ids() -> list[str]:
    seen = []
    for r in _lemma_records():
        if r["lemma"] not in seen:
            seen.append(r["lemma"])
    return seen


def _param_sets(params: dict, n: int) -> list[dict[str, int]]:
    sets = [{"n": n}]
    for p, (lo, hi) in params.items():
        nxt = []
        for env in sets:
            for v in range(arith(str(lo), env), arith(str(hi), env) + 1):
                nxt.append({**env, p: v})
        sets = nxt
    return sets


def _expected_rep(table: dict, n: int, env) -> GradedSpRep:
    comp = {}
    for d, ws in table.items():
        comp[int(d)] = {}
        for w in ws:
            mu = parse_sp(fill_template(w, env), n)
            comp[int(d)][mu] = comp[int(d)].get(mu, 0) + 1
    return GradedSpRep(n, comp)


def _run_check(rec: dict, n: int, env: dict) -> list[LemmaResult]:
    kind = rec["check"]
    lemma = rec["lemma"]
    if kind == "claims":
        out = []
        for c in claims_table():
            if c.id != rec["claim_id"] or c.n != n:
                continue
            what = f"{c.claim.value} ({c.src}, {c.dst})"
            try:
                v = certify(get_object(c.src, n), get_object(c.dst, n), c.claim)
                out.append(LemmaResult(lemma, n, what, True, c.statement, v.status.value))
            except CertificationError as err:
                out.append(LemmaResult(lemma, n, what, False, c.statement, str(err)))
        return out
    src = fill_template(rec["src"], env)
    dst = fill_template(rec["dst"], env)
    A, B = get_object(src, n), get_object(dst, n)
    if kind in ("equals", "vanishes", "vanishes_except", "zero_in_degrees"):
        h = hom_graded(A.k_class(), B.k_class()) if A.single_piece and B.single_piece else None
        if h is None:
            raise LemmaError(f"{lemma}: exact Hom needs single-piece objects, got {src}, {dst}")
        what = f"Hom^*({src}, {dst})"
        if kind == "equals":
            exp = _expected_rep(rec["expected"], n, env)
            return [LemmaResult(lemma, n, what, h == exp, str(exp), str(h))]
        if kind == "vanishes":
            return [LemmaResult(lemma, n, what + " = 0", h.is_zero(), "0", str(h))]
        degs = rec["degrees"]
        if kind == "vanishes_except":
            ok = h.vanishes_except(degs)
            return [LemmaResult(lemma, n, what + f" zero outside degrees {degs}", ok, "", str(h))]
        ok = all(not h.in_degree(d) for d in degs)
        return [LemmaResult(lemma, n, what + f" zero in degrees {degs}", ok, "", str(h))]
    if kind == "claim":
        what = f"{rec['claim']} ({src}, {dst})"
        try:
            v = certify(A, B, rec["claim"])
        except CertificationError as err:
            return [LemmaResult(lemma, n, what, False, rec.get("status", ""), str(err))]
        ok = "status" not in rec or v.status.value == rec["status"]
        return [LemmaResult(lemma, n, what, ok, rec.get("status", ""), v.status.value)]
    if kind == "euler_class":
        exp = {}
        for w, m in rec["expected"].items():
            mu = parse_sp(fill_template(w, env), n)
            exp[mu] = exp.get(mu, 0) + m
        got = equivariant_euler(A, B)
        what = f"chi^Sp({src}, {dst})"
        return [LemmaResult(lemma, n, what, got == exp, format_sp(exp), format_sp(got))]
    if kind == "mutation":
        res = get_object(fill_template(rec["result"], env), n)
        got = right_mutation_class(A, B)
        what = f"[R_{dst} {src}] = [{res.name}]"
        return [LemmaResult(lemma, n, what, got == res.k_class(), str(res.k_class()), str(got))]
    if kind == "dual_twist":
        want = B.k_class()
        got = A.k_class().dual().twist(1)
        what = f"[{src}^*(1)] = [{dst}]"
        return [LemmaResult(lemma, n, what, got == want, str(want), str(got))]
    raise LemmaError(f"unknown check type {kind!r}")


def lemma_suite(name: str = "all", ns=None) -> list[LemmaResult]:
    """Run the registered checks of one lemma id, a prefix such as 'T-lem', or 'all'."""
    recs = _lemma_records()
    if name != "all":
        exact = [r for r in recs if r["lemma"] == name]
        recs = exact or [r for r in recs if r["lemma"].startswith(name + ".")]
        if not recs:
            raise LemmaError(f"unknown lemma {name!r}; known: {', '.join(lemma_ids())}")
    out = []
    for rec in recs:
        for n in rec["n"]:
            if ns is not None and n not in ns:
                continue
            for env in _param_sets(rec.get("params", {}), n):
                out.extend(_run_check(rec, n, env))
    return out
