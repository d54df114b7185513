import pytest
from hypothesis import given, settings, strategies as st

from dynquant.fusion import swap_matrix
from dynquant.linalg import RationalMatrix
from dynquant.repn import sl2_irrep, standard_rep, tensor
from dynquant.rmatrix import (UnsupportedRank, _is_module_map, braid_relation_check, braiding,
                              constant_ybe_frt_check, dybe_check, dynamical_R, random_matrix, theta_coefficients)
from dynquant.rootdata import build_root_datum

MODES = ["classical", "quantum"]


def test_theta_first_coefficient():
    F = build_root_datum("A1").field("quantum")
    c = theta_coefficients(F, 2)
    q = F.q
    assert c[0] == 1
    assert c[1] == -(q - F.one / q)


@settings(max_examples=10)
@given(st.integers(1, 4), st.integers(1, 4))
def test_quantum_braiding_is_module_map(a, b):
    V, W = sl2_irrep(a, "quantum"), sl2_irrep(b, "quantum")
    sigma = braiding(V, W, verify=False).matrix
    assert _is_module_map(sigma, tensor(V, W), tensor(W, V)) is None


@pytest.mark.parametrize("mode", MODES)
def test_braid_relation(mode):
    V, W, U = sl2_irrep(2, mode), sl2_irrep(3, mode), sl2_irrep(2, mode)
    assert braid_relation_check(V, W, U).ok


def test_swap_is_not_a_quantum_module_map():
    V = sl2_irrep(2, "quantum")
    assert _is_module_map(swap_matrix(V, V), tensor(V, V), tensor(V, V)) is not None


def test_constant_ybe_for_braiding():
    V = sl2_irrep(2, "quantum")
    R = swap_matrix(V, V) @ braiding(V, V).matrix
    report = constant_ybe_frt_check(R, 2, frt=True)
    assert report.ok
    assert len(report.relations) == 16


def test_constant_ybe_rejects_random_matrix():
    F = build_root_datum("A1").field("classical")
    assert not constant_ybe_frt_check(random_matrix(F, 4, seed=3)).ok


@pytest.mark.parametrize("mode", MODES)
@pytest.mark.parametrize("dims", [(2, 2, 2), (2, 3, 2)])
def test_dybe(mode, dims):
    V, W, U = (sl2_irrep(d, mode) for d in dims)
    report = dybe_check(V, W, U)
    assert report.ok, report.summary()


def test_dybe_intro_form():
    V = sl2_irrep(2, "quantum")
    assert dybe_check(V, V, V, form="intro").ok


def test_dybe_sl3_vector():
    V = standard_rep(build_root_datum("A2"))
    assert dybe_check(V, V, V).ok


def test_definition_variant_fails_quantum_dybe():
    V = sl2_irrep(2, "quantum")
    assert not dybe_check(V, V, V, variant="definition").ok


def test_dybe_rejects_corrupted_R():
    V = sl2_irrep(2, "quantum")

    def bad(A, B):
        R = dynamical_R(A, B)
        ent = dict(R.entries)
        ent[(0, 0)] = ent[(0, 0)] * R.field(3)
        return RationalMatrix(R.field, R.rows, R.cols, ent)
    assert not dybe_check(V, V, V, R_fn=bad).ok


def test_classical_R_limit():
    # classical R = J21^{-1} J on sl2 vector ⊗ vector, zero weight and invertible
    V = sl2_irrep(2)
    R = dynamical_R(V, V)
    F = V.field
    assert R.inverse() @ R == RationalMatrix.identity(F, R.rows)
    assert R[(0, 0)] == 1 and R[(3, 3)] == 1


def test_quantum_rank_two_unsupported():
    V = standard_rep(build_root_datum("A2"), "quantum")
    with pytest.raises(UnsupportedRank):
        braiding(V, V)


def test_unknown_variant_and_form():
    V = sl2_irrep(2)
    with pytest.raises(ValueError):
        dynamical_R(V, V, variant="nope")
    with pytest.raises(ValueError):
        dybe_check(V, V, V, form="nope")
