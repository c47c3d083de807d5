import pytest

from lgcoh.objects import (
    CertificationError,
    Claim,
    ObjectError,
    Status,
    certify,
    check_claims,
    equivariant_euler,
    get_object,
    hom_bounds,
    registry,
    right_mutation_class,
    scalar_mutation_class,
    split_twist,
)
from lgcoh.weights import GLWeight, SpWeight


def test_lookup_and_twists():
    g = get_object("G", 5)
    assert [p.label for p in g.pieces] == ["wedge^3", "R_1", "T"]
    f = get_object("F_1(2)", 5)
    assert f.name == "F_1(2)" and not f.single_piece
    assert f.k_class() == get_object("F_1", 5).k_class().twist(2)
    assert split_twist("wedge^2(-3)") == ("wedge^2", -3)
    assert get_object("Q*Q", 4).single_piece


def test_lookup_errors():
    with pytest.raises(ObjectError):
        get_object("G", 4)
    with pytest.raises(ObjectError):
        get_object("E_2", 4)
    with pytest.raises(ObjectError):
        get_object("Foo", 4)
    with pytest.raises(ObjectError):
        get_object("F_1*Q", 4)


def test_registry_contents():
    reg = registry(5)
    for name in ["O", "T(3)", "G(6)", "E_2", "F_1(1)", "S_2(4)"]:
        assert name in reg


def test_single_piece_claims():
    v = certify(get_object("Q(1)", 4), get_object("wedge^2", 4), Claim.VANISHING)
    assert v.status is Status.CERTIFIED_VANISHING
    v = certify(get_object("wedge^3", 5), get_object("wedge^3", 5), Claim.EXCEPTIONAL)
    assert v.status is Status.CERTIFIED_EXACT
    with pytest.raises(CertificationError):
        certify(get_object("T", 5), get_object("Q", 5), Claim.VANISHING)
    with pytest.raises(CertificationError):
        certify(get_object("T", 5), get_object("T", 5), Claim.EXCEPTIONAL)


def test_multi_piece_claims_check_euler():
    v = certify(get_object("G", 5), get_object("wedge^3", 5), "vanishing")
    assert v.status is Status.PAPER_ASSERTED and v.report.euler == 0
    v = certify(get_object("G", 5), get_object("G", 5), "exceptional")
    assert v.status is Status.PAPER_ASSERTED and v.report.euler == 1
    with pytest.raises(CertificationError):
        certify(get_object("F_1(1)", 5), get_object("G", 5), "vanishing")


def test_bounds_envelope():
    r = hom_bounds(get_object("G", 5), get_object("G", 5))
    assert r.upper == {0: 157, 1: 2620, 2: 2464}
    assert r.euler == 1 and r.status is Status.BOUNDED


@pytest.mark.parametrize("n,k", [(4, 1), (5, 1), (5, 2), (6, 1), (6, 2), (6, 3)])
def test_mutation_and_duality(n, k):
    e, f = get_object(f"E_{k}", n), get_object(f"F_{k}", n)
    w = get_object(f"wedge^{k + 1}", n)
    assert right_mutation_class(e, w) == f.k_class()
    assert get_object(f"E_{n - 2 - k}", n).k_class() == f.k_class().dual().twist(1)


def test_scalar_mutation_differs():
    e, w = get_object("E_1", 4), get_object("wedge^2", 4)
    assert scalar_mutation_class(e, w) != right_mutation_class(e, w)


def test_equivariant_euler_of_t_and_wedge3():
    chi = equivariant_euler(get_object("T", 5), get_object("wedge^3", 5))
    assert chi == {SpWeight.zero(5): -1, SpWeight((1, 1, 0, 0, 0)): 1}


def test_claims_table_passes():
    results = check_claims()
    assert len(results) > 100
    statuses = {v.status for _, v in results}
    assert Status.CERTIFIED_VANISHING in statuses and Status.PAPER_ASSERTED in statuses
