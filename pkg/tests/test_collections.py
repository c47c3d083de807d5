import pytest

from lgcoh.collections import (
    CollectionError,
    LemmaError,
    collection,
    determinant,
    gram_matrix,
    is_unitriangular,
    lemma_ids,
    lemma_suite,
    load_golden,
    parse_sp,
    verify_semiorthogonality,
)
from lgcoh.objects import Status
from lgcoh.weights import SpWeight, WeightError


def test_collection_shapes():
    a = collection("lg48")
    assert len(a) == 16 and a.names[:4] == ("O", "E_1", "Q", "wedge^2")
    b = collection("lg510")
    assert len(b) == 32 and b.names[5] == "G" and b.names[21] == "G(3)"
    with pytest.raises(CollectionError):
        collection("lg36")


def test_determinant():
    assert determinant([[2, 1], [1, 1]]) == 1
    assert determinant([[0, 1], [1, 0]]) == -1
    assert determinant([[1, 2, 3], [4, 5, 6], [7, 8, 9]]) == 0
    assert determinant([[3]]) == 3
    assert is_unitriangular([[1, 5], [0, 1]]) and not is_unitriangular([[1, 0], [2, 1]])


def test_lg48_verifies():
    r = verify_semiorthogonality("lg48")
    assert not r.failures and r.unitriangular and not r.drift()
    assert len(r.pairs) == 120 and len(r.objects) == 16
    assert r.asserted() == [(2, 1), (3, 1), (5, 1)]
    assert all(p.euler == 0 for p in r.pairs)
    diag = {p.src_name: p for p in r.objects}
    assert diag["E_1"].status is Status.PAPER_ASSERTED and diag["E_1"].euler == 1
    assert diag["wedge^2(3)"].status is Status.CERTIFIED_EXACT


def test_parallel_run_is_identical():
    assert verify_semiorthogonality("lg48", jobs=3).to_json() == verify_semiorthogonality("lg48", jobs=1).to_json()


def test_lg510_reports_the_failing_pairs():
    r = verify_semiorthogonality("lg510")
    assert [(f.src, f.dst) for f in r.failures] == [(9, 5), (25, 21)]
    assert not r.unitriangular and not r.drift()
    g, _ = gram_matrix("lg510")
    assert g[9][5] == g[25][21] == 10
    assert determinant(g) == 1


def test_golden_files_exist():
    assert load_golden("lg48") == [(2, 1), (3, 1), (5, 1)]
    assert len(load_golden("lg510")) == 20


def test_sp_weight_strings():
    assert parse_sp("k", 5) == SpWeight.zero(5)
    assert parse_sp("2w1+w2", 5) == SpWeight((3, 1, 0, 0, 0))
    assert parse_sp("w1 + w3", 5) == SpWeight((2, 1, 1, 0, 0))
    with pytest.raises(WeightError):
        parse_sp("w6", 5)


def test_lemma_lookup():
    assert "T-lem.iv" in lemma_ids()
    (r,) = lemma_suite("T-lem.iv")
    assert r.ok
    assert len(lemma_suite("Bott-lem")) > 10
    with pytest.raises(LemmaError):
        lemma_suite("no-such-lemma")


def test_lemma_failure_reports_values():
    bad = [r for r in lemma_suite("T-lem.ii") if not r.ok]
    assert len(bad) == 1
    assert "T(-1)" in bad[0].what and bad[0].computed == "H^2: V(1,0,0,0,0)"
