"""Command-line entry point.

Exit codes: 0 success, 1 hard failure (a claim or identity does not hold),
2 drift of the asserted set against its frozen copy, 64 bad usage or
unparsable input, 70 internal invariant violation.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass

from . import REGISTRY_VERSION, __version__, kernels

EX_OK, EX_FAIL, EX_DRIFT, EX_USAGE, EX_SOFTWARE = 0, 1, 2, 64, 70


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EX_USAGE, f"{self.prog}: error: {message}\n")


@dataclass
class RunConfig:
    command: str
    fmt: str = "text"
    jobs: int = 1
    cache: bool = True
    n: int | None = None

    def __post_init__(self):
        if self.n is not None and self.n < 1:
            raise UsageError(f"--n must be at least 1, got {self.n}")
        if self.fmt not in ("text", "json", "csv"):
            raise UsageError(f"unknown format {self.fmt!r}")
        if self.jobs < 1:
            raise UsageError(f"--jobs must be at least 1, got {self.jobs}")


def _dump_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True)


def _dump_csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue().rstrip("\n")


def _graded_rows(h):
    from .weights import format_weight, sp_dim

    return [
        [d, format_weight(w.entries), m, sp_dim(w)]
        for d in h.degrees()
        for w, m in sorted(h.components[d].items(), reverse=True)
    ]


# ---------------------------------------------------------------- commands


def cmd_bott(args, cfg: RunConfig) -> int:
    from .bott import cohomology_weight
    from .weights import parse_weight

    h = cohomology_weight(parse_weight(args.weight, cfg.n))
    if cfg.fmt == "json":
        print(_dump_json(h.to_json()))
    elif cfg.fmt == "csv":
        print(_dump_csv(["degree", "weight", "mult", "dim"], _graded_rows(h)))
    else:
        print(h)
    return EX_OK


def cmd_lr(args, cfg: RunConfig) -> int:
    from .lr import lr_general
    from .weights import format_weight, gl_dim, parse_weight

    s = lr_general(parse_weight(args.a, cfg.n), parse_weight(args.b, cfg.n))
    rows = [[format_weight(w.entries), m, gl_dim(w)] for w, m in s.items()]
    if cfg.fmt == "json":
        print(_dump_json({"terms": [{"weight": list(w.entries), "mult": m} for w, m in s.items()]}))
    elif cfg.fmt == "csv":
        print(_dump_csv(["weight", "mult", "dim"], rows))
    else:
        print(s)
    return EX_OK


def cmd_hom(args, cfg: RunConfig) -> int:
    from .homalg import hom_graded
    from .objects import get_object, hom_bounds

    a, b = get_object(args.src, cfg.n), get_object(args.dst, cfg.n)
    if a.single_piece and b.single_piece:
        h = hom_graded(a.pieces[0], b.pieces[0])
        if cfg.fmt == "json":
            print(_dump_json({"src": a.name, "dst": b.name, "exact": True, **h.to_json()}))
        elif cfg.fmt == "csv":
            print(_dump_csv(["degree", "weight", "mult", "dim"], _graded_rows(h)))
        else:
            print(f"Hom^*({a.name}, {b.name}) = {h}")
        return EX_OK
    rep = hom_bounds(a, b)
    if cfg.fmt == "json":
        print(_dump_json({"src": a.name, "dst": b.name, "exact": False, **rep.to_json()}))
    elif cfg.fmt == "csv":
        print(_dump_csv(["degree", "upper"], sorted(rep.upper.items())))
    else:
        bounds = ", ".join(f"{d}:{v}" for d, v in sorted(rep.upper.items())) or "none"
        print(f"Hom^*({a.name}, {b.name}): upper bounds {bounds}; chi = {rep.euler}; {rep.status}")
    return EX_OK


def cmd_object(args, cfg: RunConfig) -> int:
    from .objects import certify, get_object, registry

    if args.action == "list":
        names = sorted(registry(cfg.n))
        if cfg.fmt == "json":
            print(_dump_json({"n": cfg.n, "objects": names}))
        else:
            print("\n".join(names))
        return EX_OK
    if args.action == "show":
        if not args.name:
            raise UsageError("object show needs a name")
        d = get_object(args.name, cfg.n).describe()
        if cfg.fmt == "json":
            print(_dump_json(d))
        elif cfg.fmt == "csv":
            print(_dump_csv(["piece", "class"], [[p["label"], p["class"]] for p in d["pieces"]]))
        else:
            print(f"{d['name']} on LG({cfg.n},{2 * cfg.n})")
            for p in d["pieces"]:
                print(f"  piece {p['label']}: {p['class']}")
            print(f"  class: {d['k_class']}")
        return EX_OK
    if not (args.src and args.dst):
        raise UsageError("object certify needs --src and --dst")
    v = certify(get_object(args.src, cfg.n), get_object(args.dst, cfg.n), args.claim)
    if cfg.fmt == "json":
        print(_dump_json({"src": args.src, "dst": args.dst, "claim": args.claim, **v.to_json()}))
    else:
        print(f"{args.claim} ({args.src}, {args.dst}): {v.status} (chi = {v.report.euler})")
    return EX_OK


def cmd_seq(args, cfg: RunConfig) -> int:
    from .ktheory import registry, verify_all, verify_sequence

    if args.action == "list":
        reg = registry()
        rows = [[s.id, s.kind, f"{s.n_range[0]}-{s.n_range[1]}", s.anchor] for s in reg.values()]
        if cfg.fmt == "json":
            print(_dump_json({"sequences": [dict(zip(("id", "kind", "n", "anchor"), r)) for r in rows]}))
        elif cfg.fmt == "csv":
            print(_dump_csv(["id", "kind", "n", "anchor"], rows))
        else:
            for r in rows:
                print(f"{r[0]:<16} n={r[2]:<5} {r[3]}")
        return EX_OK
    if args.id:
        if cfg.n is None:
            raise UsageError("seq verify ID needs --n")
        params = dict(_parse_param(p) for p in args.param or [])
        reports = [verify_sequence(args.id, cfg.n, **params)]
    else:
        reports = verify_all([cfg.n] if cfg.n else None)
    if cfg.fmt == "json":
        print(_dump_json({"sequences": [r.to_json() for r in reports]}))
    elif cfg.fmt == "csv":
        rows = [[r.id, r.n, ";".join(f"{k}={v}" for k, v in r.params.items()), r.ok] for r in reports]
        print(_dump_csv(["id", "n", "params", "ok"], rows))
    else:
        for r in reports:
            ps = ",".join(f"{k}={v}" for k, v in r.params.items())
            print(f"{'ok  ' if r.ok else 'FAIL'} {r.id}{'(' + ps + ')' if ps else ''} n={r.n}")
    return EX_OK if all(r.ok for r in reports) else EX_FAIL


def _parse_param(text: str) -> tuple[str, int]:
    k, sep, v = text.partition("=")
    if not sep:
        raise UsageError(f"expected NAME=VALUE, got {text!r}")
    try:
        return k.strip(), int(v)
    except ValueError:
        raise UsageError(f"parameter {k!r} needs an integer value") from None


def cmd_verify(args, cfg: RunConfig) -> int:
    from .collections import verify_semiorthogonality

    r = verify_semiorthogonality(args.collection, jobs=cfg.jobs)
    if cfg.fmt == "json":
        print(_dump_json(r.to_json()))
    elif cfg.fmt == "csv":
        rows = [[p.src, p.dst, p.src_name, p.dst_name, p.status.value, p.euler] for p in r.pairs]
        rows += [[f.src, f.dst, f.src_name, f.dst_name, "FAILED", ""] for f in r.failures]
        print(_dump_csv(["src", "dst", "src_name", "dst_name", "status", "euler"], rows))
    else:
        print(f"{r.collection}: {len(r.names)} objects on LG({r.n},{2 * r.n})")
        for k, v in sorted(r.counts().items()):
            print(f"  {k}: {v} pairs")
        diag = {}
        for p in r.objects:
            diag[p.status.value] = diag.get(p.status.value, 0) + 1
        print("  diagonal: " + ", ".join(f"{k} {v}" for k, v in sorted(diag.items())))
        print(f"  Euler matrix unitriangular: {r.unitriangular}")
        for f in r.failures:
            print(f"  FAILED ({f.src}, {f.dst}) {f.src_name} -> {f.dst_name}: {f.message}")
        if r.drift():
            print("  asserted set differs from the frozen copy")
    if r.failures or not r.unitriangular:
        return EX_FAIL
    if r.drift():
        return EX_DRIFT
    return EX_OK


def cmd_gram(args, cfg: RunConfig) -> int:
    from .collections import collection, determinant, gram_matrix

    c = collection(args.collection)
    g, ok = gram_matrix(args.collection, jobs=cfg.jobs)
    if cfg.fmt == "json":
        print(_dump_json({"collection": c.name, "n": c.n, "names": list(c.names), "gram": g,
                          "unitriangular": ok, "det": determinant(g)}))
    elif cfg.fmt == "csv":
        print(_dump_csv([""] + list(c.names), [[c.names[i]] + row for i, row in enumerate(g)]))
    else:
        width = max(len(str(x)) for row in g for x in row)
        for row in g:
            print(" ".join(str(x).rjust(width) for x in row))
        print(f"unitriangular: {ok}; det = {determinant(g)}")
    return EX_OK if ok else EX_FAIL


def cmd_suite(args, cfg: RunConfig) -> int:
    from .collections import lemma_suite

    res = lemma_suite(args.name, [cfg.n] if cfg.n else None)
    if cfg.fmt == "json":
        print(_dump_json({"results": [r.to_json() for r in res],
                          "passed": sum(r.ok for r in res), "total": len(res)}))
    elif cfg.fmt == "csv":
        print(_dump_csv(["lemma", "n", "check", "ok"], [[r.lemma, r.n, r.what, r.ok] for r in res]))
    else:
        for r in res:
            line = f"{'ok  ' if r.ok else 'FAIL'} {r.lemma} n={r.n} {r.what}"
            if not r.ok:
                line += f"\n       expected {r.expected or '(see check)'}\n       computed {r.computed}"
            print(line)
        print(f"{sum(r.ok for r in res)}/{len(res)} checks passed")
    return EX_OK if all(r.ok for r in res) else EX_FAIL


# ------------------------------------------------------------------ parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int, help="rank n of LG(n,2n)")
    common.add_argument("--format", choices=["text", "json", "csv"], default="text")
    common.add_argument("--jobs", type=int, default=1, help="worker processes for collection runs")
    common.add_argument("--no-cache", action="store_true", help="disable memoization")
    common.add_argument("--backend", choices=["cython", "python"], help="kernel implementation")

    p = _Parser(prog="lgcoh", description="Bott cohomology and exceptional collections on LG(n,2n).")
    p.add_argument("--version", action="version",
                   version=f"lgcoh {__version__} (registry {REGISTRY_VERSION}, kernels {kernels.backend()})")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("bott", parents=[common], help="cohomology of S^lambda Q")
    s.add_argument("--weight", required=True, help='e.g. "(0,0,0,0,-2)"')
    s.set_defaults(func=cmd_bott, need_n=True)

    s = sub.add_parser("lr", parents=[common], help="decompose S^a Q (x) S^b Q")
    s.add_argument("--a", required=True)
    s.add_argument("--b", required=True)
    s.set_defaults(func=cmd_lr, need_n=True)

    s = sub.add_parser("hom", parents=[common], help="graded Hom between bundles or objects")
    s.add_argument("--src", required=True, help='object name or bundle expression, e.g. "T" or "dual(Q)*O(1)"')
    s.add_argument("--dst", required=True)
    s.set_defaults(func=cmd_hom, need_n=True)

    s = sub.add_parser("object", parents=[common], help="inspect filtered objects")
    s.add_argument("action", choices=["show", "list", "certify"])
    s.add_argument("name", nargs="?")
    s.add_argument("--src")
    s.add_argument("--dst")
    s.add_argument("--claim", choices=["vanishing", "exceptional"], default="vanishing")
    s.set_defaults(func=cmd_object, need_n=True)

    s = sub.add_parser("seq", parents=[common], help="K-theory identities")
    s.add_argument("action", choices=["list", "verify"])
    s.add_argument("id", nargs="?")
    s.add_argument("--param", action="append", help="NAME=VALUE, repeatable")
    s.set_defaults(func=cmd_seq, need_n=False)

    s = sub.add_parser("verify", parents=[common], help="check a collection")
    s.add_argument("collection", choices=["lg48", "lg510"])
    s.set_defaults(func=cmd_verify, need_n=False)

    s = sub.add_parser("gram", parents=[common], help="Euler matrix of a collection")
    s.add_argument("collection", choices=["lg48", "lg510"])
    s.set_defaults(func=cmd_gram, need_n=False)

    s = sub.add_parser("suite", parents=[common], help="reproduce the registered Hom computations")
    s.add_argument("name", nargs="?", default="all", help="lemma id, prefix such as T-lem, or all")
    s.set_defaults(func=cmd_suite, need_n=False)
    return p


def main(argv=None) -> int:
    from .collections import CollectionError, LemmaError
    from .expr import ExprError
    from .ktheory import SequenceError
    from .objects import CertificationError
    from .weights import RankMismatch, WeightError

    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = RunConfig(args.command, args.format, args.jobs, not args.no_cache, args.n)
        if args.need_n and cfg.n is None:
            raise UsageError(f"{args.command} needs --n")
        if args.backend:
            kernels.use_backend(args.backend)
        if not cfg.cache:
            kernels.set_caching(False)
        try:
            return args.func(args, cfg)
        finally:
            if not cfg.cache:
                kernels.set_caching(True)
    except (UsageError, WeightError, RankMismatch, ExprError, SequenceError, LemmaError, CollectionError) as err:
        msg = err.args[0] if isinstance(err, KeyError) and err.args else err
        print(f"lgcoh: error: {msg}", file=sys.stderr)
        return EX_USAGE
    except RuntimeError as err:
        print(f"lgcoh: error: {err}", file=sys.stderr)
        return EX_USAGE
    except CertificationError as err:
        print(f"lgcoh: claim failed: {err}", file=sys.stderr)
        return EX_FAIL
    except (AssertionError, ArithmeticError) as err:
        print(f"lgcoh: internal invariant violated: {err!r}", file=sys.stderr)
        return EX_SOFTWARE


if __name__ == "__main__":
    sys.exit(main())
