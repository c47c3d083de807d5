import pytest

from lgcoh.ktheory import char_of_sum, char_weight, gl_decompose
from lgcoh.lr import RepSum, WeightSum, lr_general, lr_partitions, pieri, tensor
from lgcoh.weights import GLWeight, WeightError

from oracles import all_partitions


def W(*e):
    return GLWeight(e)


def test_q_times_wedge():
    s = lr_general(W(1, 0, 0, 0, 0), W(1, 1, 0, 0, 0))
    assert s.terms == {W(2, 1, 0, 0, 0): 1, W(1, 1, 1, 0, 0): 1}


def test_truncation_by_rank():
    assert lr_partitions((1, 1), (1, 1), 2).terms == {W(2, 2): 1}
    assert lr_partitions((1, 1), (1, 1), 3).terms == {W(2, 2, 0): 1, W(2, 1, 1): 1}
    with pytest.raises(WeightError):
        lr_partitions((1, -1), (1,), 3)


def test_negative_weights_shift():
    s = lr_general(W(0, 0, -1, -1, -3), W(1, 0, 0, 0, 0))
    assert s.terms == {W(1, 0, -1, -1, -3): 1, W(0, 0, 0, -1, -3): 1, W(0, 0, -1, -1, -2): 1}


def test_classical_coefficient():
    # c^{(3,2,1)}_{(2,1),(2,1)} = 2
    assert lr_partitions((2, 1), (2, 1), 3).terms[W(3, 2, 1)] == 2


@pytest.mark.parametrize("n", [3, 4, 5])
def test_pieri_agrees_with_tableaux(n):
    for size in range(0, 5):
        for p in all_partitions(size, n):
            lam = GLWeight.of(p, n)
            for k in range(1, n + 1):
                col = GLWeight.of((1,) * k, n)
                assert pieri(lam, k) == lr_general(lam, col)


def test_agrees_with_character_product():
    for a in [(2, 1, 0, 0), (3, 1, 1, 0), (1, 0, 0, -2)]:
        for b in [(1, 1, 0, 0), (2, 2, 0, 0), (0, 0, -1, -1)]:
            lhs = lr_general(W(*a), W(*b))
            assert gl_decompose(char_weight(W(*a)) * char_weight(W(*b))) == lhs


def test_sums_and_virtual_classes():
    q = RepSum.single(W(1, 0, 0))
    virt = WeightSum(3, {W(1, 1, 0): 1, W(0, 0, 0): -1})
    t = tensor(q, virt)
    assert isinstance(t, WeightSum) and not isinstance(t, RepSum)
    assert char_of_sum(t) == char_of_sum(q) * char_of_sum(virt)
    with pytest.raises(WeightError):
        RepSum(3, {W(0, 0, 0): -1})
    assert (q + q).terms == {W(1, 0, 0): 2}
    assert (q - q).terms == {}
