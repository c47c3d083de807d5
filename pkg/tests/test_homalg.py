import pytest

from lgcoh.bott import GradedSpRep
from lgcoh.expr import ExprError, parse
from lgcoh.homalg import euler_class, euler_form, hom_graded, parse_bundle, parse_class, schur, serre_check
from lgcoh.lr import WeightSum
from lgcoh.weights import GLWeight, SpWeight, WeightError


def test_parser_atoms():
    n = 5
    assert parse_bundle("T", n).sum.terms == {GLWeight((3, 1, 1, 0, 0)): 1}
    assert parse_bundle("R_1(2)", n).sum.terms == {GLWeight((4, 3, 2, 2, 2)): 1}
    assert parse_bundle("U", n).sum.terms == {GLWeight((0, 0, 0, 0, -1)): 1}
    assert parse_bundle("wedge^2*Q", n).sum == parse_bundle("wedge^3 + R_1", n).sum
    assert parse_bundle("dual(Q)(1)", n).sum.terms == {GLWeight((1, 1, 1, 1, 0)): 1}
    assert parse_bundle("∧^2 ⊗ Q", n).sum == parse_bundle("wedge^2*Q", n).sum
    assert parse_class("Q - O", 3).terms == {GLWeight((1, 0, 0)): 1, GLWeight((0, 0, 0)): -1}


def test_parser_errors():
    for bad in ["", "S(1,", "Q +", "wedge^", "(Q"]:
        with pytest.raises(ExprError):
            parse(bad)
    with pytest.raises(ExprError):
        parse_bundle("Q - O", 3)
    with pytest.raises(ExprError):
        parse_bundle("V*Q", 3)


def test_hom_t_to_q():
    t, q = schur((3, 1, 1), 5), schur((1,), 5)
    assert hom_graded(t, q) == GradedSpRep.literal(5, {2: [(0, 0, 0, 0, 0)]})
    assert euler_form(t, q) == 1


def test_end_r1():
    r = schur((2, 1), 5)
    h = hom_graded(r, r)
    assert h == GradedSpRep.literal(5, {0: [(0,) * 5], 1: [(2, 0, 0, 0, 0), (1, 1, 0, 0, 0)]})
    assert euler_form(r, r) == -98


def test_hom_requires_honest_bundles():
    virt = WeightSum(3, {GLWeight((0, 0, 0)): -1})
    with pytest.raises(WeightError):
        hom_graded(virt, schur((), 3))
    assert euler_form(virt, schur((), 3)) == -1


def test_euler_class_is_bilinear():
    a, b, c = schur((1,), 4), schur((1, 1), 4), schur((2,), 4, -1)
    ab = WeightSum(4, {**a.sum.terms, **b.sum.terms})
    lhs = euler_class(ab, c)
    rhs = dict(euler_class(a, c))
    for mu, m in euler_class(b, c).items():
        rhs[mu] = rhs.get(mu, 0) + m
    assert lhs == {k: v for k, v in rhs.items() if v}


@pytest.mark.parametrize("a,b", [((3, 1, 1), (1, 1, 1)), ((2, 1), (1, 1)), ((1,), (2, 1)), ((3, 1, 1), (3, 1, 1))])
def test_serre_duality(a, b):
    r = serre_check(schur(a, 5), schur(b, 5))
    assert r.ok, r.mismatches


def test_rank_mismatch():
    with pytest.raises(ValueError):
        hom_graded(schur((1,), 4), schur((1,), 5))
