import pytest

from lgcoh.bott import GradedSpRep, cohomology_expr, cohomology_weight, graded_dim, lg_dim
from lgcoh.lr import RepSum
from lgcoh.weights import GLWeight, SpWeight, WeightError

from oracles import chi_from_graded, chi_localized


def W(*e):
    return GLWeight(e)


def test_dimension_of_lg():
    assert [lg_dim(n) for n in (1, 2, 3, 4, 5)] == [1, 3, 6, 10, 15]


def test_s2_dual_has_one_dimensional_h1():
    h = cohomology_weight(W(0, 0, 0, 0, -2))
    assert h == GradedSpRep.literal(5, {1: [(0, 0, 0, 0, 0)]})
    assert graded_dim(h) == {1: 1}


def test_global_sections():
    assert cohomology_weight(W(1, 0, 0, 0)).components == {0: {SpWeight((1, 0, 0, 0)): 1}}
    assert cohomology_weight(W(1, 1, 1, 1)).components == {0: {SpWeight((1, 1, 1, 1)): 1}}
    assert cohomology_weight(W(0, 0, 0, 0)).components == {0: {SpWeight.zero(4): 1}}


@pytest.mark.parametrize("j", range(-5, 0))
def test_negative_twists_are_acyclic(j):
    for k in range(0, 5):
        lam = GLWeight.of((1,) * k, 5)
        assert cohomology_weight(GLWeight(tuple(x + j for x in lam.entries))).is_zero()


def test_canonical_bundle_top_degree():
    h = cohomology_weight(W(-5, -5, -5, -5))
    assert h.components == {10: {SpWeight.zero(4): 1}}


def test_additivity_and_euler():
    s = RepSum(4, {W(1, 0, 0, 0): 2, W(0, 0, 0, -2): 1})
    h = cohomology_expr(s)
    assert h.in_degree(0) == {SpWeight((1, 0, 0, 0)): 2}
    assert h.euler() == 2 * 8 - 1
    with pytest.raises(WeightError):
        GradedSpRep(4, {11: {SpWeight.zero(4): 1}})


@pytest.mark.parametrize(
    "lam",
    [(0, 0, 0, 0, -2), (1, 0, 0, -1, -3), (2, 1, 0, -1, -1), (3, 1, 1, -2, -2), (0, 0, 0, -3), (2, 0, -4)],
)
def test_matches_fixed_point_localization(lam):
    w = W(*lam)
    assert chi_localized(w) == chi_from_graded(cohomology_weight(w))


def test_json_shape():
    d = cohomology_weight(W(0, 0, 0, 0, -2)).to_json()
    assert d == {"degrees": {"1": [{"weight": [0, 0, 0, 0, 0], "mult": 1, "dim": 1}]}}
