import pytest

from lgcoh.ktheory import (
    Character,
    SequenceError,
    ambient_char,
    ambient_class,
    arith,
    char_expr,
    char_weight,
    fill_template,
    gl_decompose,
    rank_k0,
    registry,
    restrict_sp,
    sp_character,
    sym_power,
    verify_all,
    verify_sequence,
    wedge_power,
)
from lgcoh.weights import GLWeight, SpWeight, sp_dim


def test_ambient_is_q_plus_dual():
    for n in range(1, 6):
        assert ambient_char(n) == char_weight(GLWeight.of((1,), n)) + char_weight(GLWeight.of((1,), n)).dual()
        assert ambient_class(n).terms == {GLWeight.of((1,), n): 1, GLWeight((0,) * (n - 1) + (-1,)): 1}


def test_power_operations():
    q = char_weight(GLWeight((1, 0, 0)))
    assert wedge_power(q, 2) == char_weight(GLWeight((1, 1, 0)))
    assert sym_power(q, 3) == char_weight(GLWeight((3, 0, 0)))
    assert wedge_power(q, 4).is_zero()


def test_sp_characters_have_weyl_dimension():
    for mu in [(1, 0, 0), (1, 1, 0), (2, 1, 0), (3, 1, 1), (2, 2, 2)]:
        ch = sp_character(SpWeight(mu))
        assert ch.value_at_ones() == sp_dim(mu)
        assert ch == ch.dual()


def test_branching_of_v():
    assert restrict_sp({SpWeight((1, 0, 0)): 1}, 3) == ambient_class(3)


def test_decompose_roundtrip():
    ch = char_weight(GLWeight((2, 1, -1))) * char_weight(GLWeight((1, 0, 0)))
    assert sum((char_weight(w).scale(m) for w, m in gl_decompose(ch).items()), Character(3)) == ch


def test_char_expr_sequence_basic():
    for n in range(1, 6):
        assert char_expr("U - V + Q", n).is_zero()


def test_k0_rank():
    assert [rank_k0(n) for n in range(1, 6)] == [2, 4, 8, 16, 32]


def test_arith_and_templates():
    assert arith("n-k-2", {"n": 5, "k": 1}) == 2
    assert arith("min(5, 2*n)", {"n": 2}) == 4
    with pytest.raises(ValueError):
        arith("__import__('os')", {})
    assert fill_template("R_{n-2-k}(1)", {"n": 5, "k": 1}) == "R_2(1)"


def test_registry_and_reports():
    reg = registry()
    for sid in ["basic-seq", "S2Q*-seq", "S2Q-seq", "S3Q-seq", "S4Q-seq", "sym-resolution",
                "koszul-sym", "koszul-ext", "wedge-filtration"]:
        assert sid in reg
    r = verify_sequence("S2Q*-seq", 4)
    assert r.ok and r.to_json()["residual_terms"] == 0
    assert verify_sequence("sym-resolution", 3, m=4).ok
    with pytest.raises(SequenceError):
        verify_sequence("S3Q-seq", 5)
    with pytest.raises(SequenceError):
        verify_sequence("sym-resolution", 3)
    with pytest.raises(SequenceError):
        verify_sequence("nope", 3)


def test_wrong_identity_is_detected():
    # dropping a term must leave a nonzero residual
    assert not char_expr("Sym^2(V) - V*Q + wedge^2", 4).is_zero()
    assert char_expr("dual(Sym^2) - Sym^2(V) + V*Q - wedge^2", 4).is_zero()


def test_all_registered_identities_hold_at_n4():
    reports = verify_all([4])
    assert reports and all(r.ok for r in reports)
