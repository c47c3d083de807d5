import json

import pytest

from lgcoh.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_bott_text_and_json(capsys):
    code, out, _ = run(capsys, "bott", "--n", "5", "--weight", "(0,0,0,0,-2)")
    assert code == 0 and out.strip() == "H^1: V(0,0,0,0,0)"
    code, out, _ = run(capsys, "bott", "--n", "5", "--weight", "(0,0,0,0,-2)", "--format", "json")
    assert json.loads(out) == {"degrees": {"1": [{"dim": 1, "mult": 1, "weight": [0, 0, 0, 0, 0]}]}}


def test_lr_two_terms(capsys):
    code, out, _ = run(capsys, "lr", "--n", "5", "--a", "(1,0,0,0,0)", "--b", "(1,1,0,0,0)", "--format", "json")
    assert code == 0 and len(json.loads(out)["terms"]) == 2


def test_hom_and_object(capsys):
    code, out, _ = run(capsys, "hom", "--n", "5", "--src", "T", "--dst", "Q")
    assert code == 0 and "H^2: V(0,0,0,0,0)" in out
    code, out, _ = run(capsys, "hom", "--n", "5", "--src", "G", "--dst", "G", "--format", "json")
    assert json.loads(out)["status"] == "BOUNDED"
    code, out, _ = run(capsys, "object", "show", "G", "--n", "5")
    assert code == 0 and "piece T" in out
    code, out, _ = run(capsys, "object", "certify", "--n", "5", "--src", "G", "--dst", "wedge^3")
    assert code == 0 and "PAPER_ASSERTED" in out
    code, _, err = run(capsys, "object", "certify", "--n", "5", "--src", "T", "--dst", "Q")
    assert code == 1 and "claim failed" in err


def test_verify_exit_codes(capsys):
    code, out, _ = run(capsys, "verify", "lg48", "--format", "json")
    d = json.loads(out)
    assert code == 0 and len(d["names"]) == 16 and d["unitriangular"] is True
    assert set(d) >= {"collection", "n", "pairs", "gram", "unitriangular"}
    code, out, _ = run(capsys, "verify", "lg510")
    assert code == 1 and "FAILED (9, 5)" in out


def test_json_is_byte_identical(capsys):
    _, a, _ = run(capsys, "verify", "lg48", "--format", "json", "--jobs", "1")
    _, b, _ = run(capsys, "verify", "lg48", "--format", "json", "--jobs", "2")
    assert a == b


def test_gram_csv(capsys):
    code, out, _ = run(capsys, "gram", "lg48", "--format", "csv")
    lines = out.strip().splitlines()
    assert code == 0 and len(lines) == 17 and lines[1].startswith("O,1,")


def test_seq_and_suite(capsys):
    code, out, _ = run(capsys, "seq", "verify", "sym-resolution", "--n", "4", "--param", "m=3")
    assert code == 0 and out.startswith("ok")
    code, out, _ = run(capsys, "suite", "T-lem.iv")
    assert code == 0 and "1/1" in out
    code, out, _ = run(capsys, "suite", "coh-lem", "--n", "3", "--format", "json")
    d = json.loads(out)
    assert code == 0 and d["passed"] == d["total"] > 0


@pytest.mark.parametrize(
    "argv",
    [
        ["nosuch"],
        ["bott", "--weight", "(1)"],
        ["bott", "--n", "3", "--weight", "(a)"],
        ["bott", "--n", "0", "--weight", "(1)"],
        ["hom", "--n", "5", "--src", "Foo", "--dst", "Q"],
        ["seq", "verify", "nope", "--n", "3"],
        ["suite", "nope"],
        ["verify", "lg48", "--jobs", "0"],
    ],
)
def test_usage_errors_exit_64(capsys, argv):
    assert main(argv) == 64


def test_backend_and_cache_flags(capsys):
    code, out, _ = run(capsys, "lr", "--n", "4", "--a", "(2,1)", "--b", "(2,1)", "--backend", "python", "--no-cache")
    assert code == 0 and "2*(3,2,1,0)" in out
    from lgcoh import kernels

    if "cython" in kernels.available():
        kernels.use_backend("cython")
