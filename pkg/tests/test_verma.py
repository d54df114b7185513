import pytest
from hypothesis import given, strategies as st

from dynquant.repn import TensorModule, sl2_irrep, standard_rep, trivial_rep
from dynquant.rootdata import build_root_datum
from dynquant.verma import (AlgebraWord, NotCentral, TruncationTooShallow, harish_chandra, highest_weight_space,
                            hw_lift, sl2_casimir, truncated_verma, verify_projector)

MODES = ["classical", "quantum"]


@pytest.mark.parametrize("mode", MODES)
@pytest.mark.parametrize("name", ["A1", "A2", "B2"])
def test_weight_space_dimensions_match_kostant(name, mode):
    datum = build_root_datum(name)
    M = truncated_verma(datum, mode, 4)
    for a in range(4):
        for b in range(4 if datum.rank > 1 else 1):
            beta = (a, b)[: datum.rank]
            if sum(beta) <= 4:
                assert M.dimension(beta) == datum.kostant_count(beta)


def test_sl2_lifts_classical():
    V = sl2_irrep(3, "classical")
    M = truncated_verma(V.datum, "classical", 2)
    F = V.field
    lam = F.lam(0)
    lift = hw_lift(V, M, 2)
    assert lift == {(2, ()): F.one, (1, (0,)): -F(2) / lam, (0, (0, 0)): F(2) / (lam * (lam - F.one))}


def test_sl2_lifts_quantum():
    V = sl2_irrep(3, "quantum")
    M = truncated_verma(V.datum, "quantum", 2)
    F = V.field
    q = F.q
    a = -F.qint(2) / F.qint(0, [1])
    b = -a / (q * q * F.qint(-1, [1]))
    assert hw_lift(V, M, 2) == {(2, ()): F.one, (1, (0,)): a, (0, (0, 0)): b}


@pytest.mark.parametrize("mode", MODES)
def test_lifts_are_killed_by_e(mode):
    V = standard_rep(build_root_datum("A2"), mode)
    hw = highest_weight_space(V)
    for vec in hw.vectors:
        for j in range(2):
            assert not hw.ambient.act("E", j, vec)
    assert hw.leading_matrix().is_identity()


def test_truncation_too_shallow():
    V = sl2_irrep(3, "classical")
    M = truncated_verma(V.datum, "classical", 1)
    with pytest.raises(TruncationTooShallow):
        hw_lift(V, M, 2)


@pytest.mark.parametrize("mode", MODES)
@pytest.mark.parametrize("dim", [2, 3])
def test_projector_sl2(mode, dim):
    V = sl2_irrep(dim, mode)
    report = verify_projector(V, truncated_verma(V.datum, mode, 3))
    assert report.ok, [c for c in report.checks if not c[1]]


def test_projector_sl3_vector():
    V = standard_rep(build_root_datum("A2"), "classical")
    report = verify_projector(V, truncated_verma(V.datum, "classical", 2))
    assert report.ok


def test_harish_chandra_casimir():
    datum = build_root_datum("A1")
    F = datum.field("classical")
    lam = F.lam(0)
    assert harish_chandra(sl2_casimir(F), datum) == lam * (lam + F(2)) / F(2)


@given(st.integers(0, 5))
def test_casimir_acts_by_hc_on_irreps(n):
    # independent route: the Casimir on the (n+1)-dim irrep is n(n+2)/2
    V = sl2_irrep(n + 1, "classical")
    F = V.field
    E, Fm, H = V.matrix("E", 0), V.matrix("F", 0), V.weight_matrix_of(lambda w: F(w[0]))
    C = E @ Fm + Fm @ E + (H @ H).scale(F.one / F(2))
    assert C == V.identity().scale(F(n * (n + 2)) / F(2))


def test_non_central_element_rejected():
    datum = build_root_datum("A1")
    F = datum.field("classical")
    with pytest.raises(NotCentral):
        harish_chandra(AlgebraWord.word(F, ("E", 0), ("F", 0)), datum)
