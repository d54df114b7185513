import pytest
from hypothesis import given, settings, strategies as st

from dynquant.linalg import RationalMatrix
from dynquant.repn import sl2_irrep, standard_rep, tensor, trivial_rep
from dynquant.rmatrix import UnsupportedRank
from dynquant.rootdata import NotReduced, WeylWord, build_root_datum
from dynquant.weyl import (dynamical_weyl_A, dynamical_weyl_A_direct, ev_compare, ev_normalized_A, hw_basis, is_highest_weight,
                           lusztig_braid_check, lusztig_T, multiplicativity_check, simple_A, simple_T,
                           square_identity_check, weight_map_check, zhelobenko_apply, zhelobenko_braid_check,
                           zhelobenko_unit_check)

MODES = ["classical", "quantum"]
A2 = build_root_datum("A2")


def vector(mode="classical"):
    return standard_rep(A2, mode)


def test_simple_T_on_sl2_vector():
    V = sl2_irrep(2)
    T = simple_T(0, V)
    assert T == RationalMatrix(V.field, V.labels, V.labels, {(1, 0): V.field.one, (0, 1): -V.field.one})


def test_quantum_T_on_sl2_vector():
    V = sl2_irrep(2, "quantum")
    F = V.field
    T = simple_T(0, V)
    assert T[(1, 0)] == 1
    assert T[(0, 1)] == -F.q


@pytest.mark.parametrize("mode", MODES)
def test_T_braid_relation(mode):
    assert lusztig_braid_check(vector(mode)).ok


@pytest.mark.parametrize("mode", MODES)
@pytest.mark.parametrize("dim", [2, 3])
def test_T_maps_weight_spaces(mode, dim):
    V = sl2_irrep(dim, mode)
    T = lusztig_T(WeylWord((1,)), V).matrix
    assert all(V.weights[r][0] == -V.weights[c][0] for (r, c) in T.entries)


@pytest.mark.parametrize("mode", MODES)
def test_sl2_A_values(mode):
    V = sl2_irrep(2, mode)
    F = V.field
    num = F.qint(2, [1]) if mode == "quantum" else F.affine(2, [1])
    den = F.qint(1, [1]) if mode == "quantum" else F.affine(1, [1])
    expected = RationalMatrix(F, V.labels, V.labels, {(1, 0): F.one, (0, 1): -num / den})
    assert dynamical_weyl_A(WeylWord((1,)), V).matrix == expected


def test_sl3_longest_element_values():
    V = vector()
    F = V.field
    l1, l2 = F.lam(0), F.lam(1)
    A = dynamical_weyl_A(WeylWord.parse("121"), V).matrix
    expected = {
        (0, 2): (l1 + l2 + F(3)) * (l2 + F(2)) / ((l1 + l2 + F(2)) * (l2 + F.one)),
        (1, 1): -(l1 + F(2)) / (l1 + F.one),
        (2, 0): F.one,
    }
    assert A == RationalMatrix(F, V.labels, V.labels, expected)


def test_reduced_word_independence():
    V = vector()
    assert dynamical_weyl_A(WeylWord.parse("121"), V).matrix == dynamical_weyl_A(WeylWord.parse("212"), V).matrix


@pytest.mark.parametrize("word", ["1", "2", "12", "21", "121"])
def test_cocycle_product_matches_composite_operator(word):
    V = vector()
    w = WeylWord.parse(word)
    assert dynamical_weyl_A(w, V).matrix == dynamical_weyl_A_direct(w, V).matrix


@pytest.mark.parametrize("mode", MODES)
@pytest.mark.parametrize("dim", [2, 3, 4])
def test_sl2_product_matches_direct(mode, dim):
    V = sl2_irrep(dim, mode)
    w = WeylWord((1,))
    assert dynamical_weyl_A(w, V).matrix == dynamical_weyl_A_direct(w, V).matrix


@pytest.mark.parametrize("word", ["e", "1", "12", "121"])
def test_weight_map(word):
    assert weight_map_check(dynamical_weyl_A(WeylWord.parse(word), vector()))


def test_identity_word():
    V = vector("quantum")
    assert dynamical_weyl_A(WeylWord(()), V).matrix.is_identity()


def test_not_reduced():
    with pytest.raises(NotReduced):
        dynamical_weyl_A(WeylWord.parse("11"), vector())


@pytest.mark.parametrize("mode", MODES)
@pytest.mark.parametrize("dim", [2, 3, 4])
def test_zhelobenko_output_is_highest_weight(mode, dim):
    V = sl2_irrep(dim, mode)
    for lift in hw_basis(V):
        assert is_highest_weight(V, zhelobenko_apply(0, V, lift))


def test_zhelobenko_braid_relation():
    assert zhelobenko_braid_check(vector()).ok


@pytest.mark.parametrize("V", [vector(), sl2_irrep(3)], ids=["sl3 vector", "sl2 irrep(3)"])
def test_square_identity(V):
    for i in range(V.datum.rank):
        assert square_identity_check(i, V).ok


@pytest.mark.parametrize("mode", MODES)
def test_unit_is_fixed(mode):
    assert zhelobenko_unit_check(sl2_irrep(2, mode)).ok


@settings(max_examples=8)
@given(st.integers(1, 3), st.integers(1, 3), st.sampled_from(MODES))
def test_multiplicativity_sl2(a, b, mode):
    report = multiplicativity_check(0, sl2_irrep(a, mode), sl2_irrep(b, mode))
    assert report.ok, report.summary()


@pytest.mark.parametrize("i", [0, 1])
def test_multiplicativity_sl3(i):
    assert multiplicativity_check(i, vector(), vector()).ok


def test_multiplicativity_detects_wrong_A():
    def bad(i, V):
        A = simple_A(i, V)
        return A.scale(V.field(2)) if V.dim == 4 else A
    V = sl2_irrep(2)
    assert not multiplicativity_check(0, V, V, A_fn=bad).ok


def test_trivial_module_has_unit_A():
    triv = trivial_rep(A2)
    assert simple_A(0, triv).is_identity()


@pytest.mark.parametrize("mode", MODES)
def test_ev_normalization(mode):
    V = sl2_irrep(2, mode)
    A_ev, report = ev_compare(WeylWord((1,)), V)
    assert report.ok
    F = V.field
    if mode == "classical":
        assert A_ev == dynamical_weyl_A(WeylWord((1,)), V).matrix
    else:
        assert A_ev[(1, 0)] == F.q
        assert A_ev[(0, 1)] == -F.qint(2, [1]) / (F.q * F.qint(1, [1]))


@pytest.mark.parametrize("dims", [(2, 2), (2, 3)])
def test_ev_normalized_multiplicativity(dims):
    V, U = (sl2_irrep(d, "quantum") for d in dims)
    assert multiplicativity_check(0, V, U, A_fn=ev_normalized_A).ok


def test_quantum_rank_two_unsupported():
    with pytest.raises(UnsupportedRank):
        simple_A(0, vector("quantum"))
