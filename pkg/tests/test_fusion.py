import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from dynquant.fusion import (NotZeroWeight, check_fusion_structure, conjugate_by_swap, fusion_matrix,
                             fusion_via_intertwiners, gauge_transform, shifted_cocycle_check, weight_gauge)
from dynquant.linalg import RationalMatrix
from dynquant.repn import sl2_irrep, standard_rep, trivial_rep
from dynquant.rootdata import build_root_datum

MODES = ["classical", "quantum"]


def vector(mode="classical"):
    return standard_rep(build_root_datum("A2"), mode)


def test_sl2_fusion_classical():
    V = sl2_irrep(2)
    F = V.field
    J = fusion_matrix(V, V)
    expected = RationalMatrix.identity(F, J.rows)
    expected.entries[(1, 2)] = -F.one / F.affine(1, [1])
    assert J == expected


def test_sl2_fusion_quantum():
    V = sl2_irrep(2, "quantum")
    F = V.field
    J = fusion_matrix(V, V)
    expected = RationalMatrix.identity(F, J.rows)
    expected.entries[(1, 2)] = -F.qpow(-1, [-1]) / F.qint(1, [1])
    assert J == expected


def test_sl2_fusion_spot_values(rng):
    # classical closed form 1 - e⊗f/(λ+1) evaluated at random rational points
    V = sl2_irrep(2)
    J = fusion_matrix(V, V)
    F = V.field
    for _ in range(20):
        lam = Fraction(rng.randint(-50, 50), rng.randint(1, 9))
        if lam == -1:
            continue
        assert F.evaluate(J[(1, 2)], [lam]) == -1 / (lam + 1)
        assert F.evaluate(J[(0, 0)], [lam]) == 1


def test_sl3_vector_fusion_entries():
    V = vector()
    F = V.field
    J = fusion_matrix(V, V)
    off = {k: x for k, x in J.entries.items() if k[0] != k[1]}
    assert off == {
        (1, 3): -F.one / F.affine(1, [1, 0]),
        (2, 6): -F.one / F.affine(2, [1, 1]),
        (5, 7): -F.one / F.affine(1, [0, 1]),
    }


@pytest.mark.parametrize("mode", MODES)
@pytest.mark.parametrize("dims", [(2, 2), (2, 3), (3, 2), (3, 3)])
def test_structure(mode, dims):
    V, W = (sl2_irrep(d, mode) for d in dims)
    assert check_fusion_structure(fusion_matrix(V, W), V, W).ok


@pytest.mark.parametrize("mode", MODES)
@pytest.mark.parametrize("dims", [(2, 2), (2, 3), (3, 2)])
def test_agrees_with_intertwiner_route(mode, dims):
    V, W = (sl2_irrep(d, mode) for d in dims)
    assert fusion_matrix(V, W) == conjugate_by_swap(fusion_via_intertwiners(W, V), V, W)


def test_agrees_with_intertwiner_route_sl3():
    V = vector()
    assert fusion_matrix(V, V) == conjugate_by_swap(fusion_via_intertwiners(V, V), V, V)


@pytest.mark.parametrize("mode", MODES)
def test_cocycle_sl2(mode):
    V = sl2_irrep(2, mode)
    report = shifted_cocycle_check(V, V, V)
    assert report.ok, report.summary()


def test_cocycle_mixed_dims():
    report = shifted_cocycle_check(sl2_irrep(2), sl2_irrep(3), sl2_irrep(2))
    assert report.ok, report.summary()


def test_cocycle_fails_for_corrupted_family():
    def bad(V, W):
        J = fusion_matrix(V, W)
        ent = dict(J.entries)
        for k in ent:
            if k[0] != k[1]:
                ent[k] = ent[k] * J.field(2)
        return RationalMatrix(J.field, J.rows, J.cols, ent)
    V = sl2_irrep(2)
    assert not shifted_cocycle_check(V, V, V, family=bad).ok


def test_normalization():
    for V in (sl2_irrep(3, "quantum"), vector()):
        triv = trivial_rep(V.datum, V.mode)
        assert fusion_matrix(V, triv).is_identity()
        assert fusion_matrix(triv, V).is_identity()


@settings(max_examples=15)
@given(st.integers(-3, 3), st.integers(1, 4), st.sampled_from(MODES))
def test_weight_gauge_preserves_cocycle(a, b, mode):
    def g(F, mu):
        # (λ + b)^{μ} times a λ-independent weight factor; equals 1 at μ = 0
        base = F.affine(b, [1]) if mode == "classical" else F.qpow(0, [1]) + F(b)
        out = F.one
        for _ in range(abs(mu[0])):
            out = out * base if mu[0] > 0 else out / base
        return out * F(a * a + 1) ** mu[0] if mu[0] >= 0 else out / F(a * a + 1) ** -mu[0]
    family = gauge_transform(fusion_matrix, weight_gauge(g))
    V = sl2_irrep(2, mode)
    report = shifted_cocycle_check(V, V, V, family=family)
    assert report.ok, report.summary()


def test_gauge_must_preserve_weights():
    def mixing(R):
        F = R.field
        ent = {(i, j): F.one for i in range(R.dim) for j in range(R.dim)}
        return RationalMatrix(F, R.labels, R.labels, ent)
    V = sl2_irrep(2)
    with pytest.raises(NotZeroWeight):
        gauge_transform(fusion_matrix, mixing)(V, V)


def test_unnormalized_gauge_rejected():
    V = sl2_irrep(2)
    with pytest.raises(ValueError):
        gauge_transform(fusion_matrix, weight_gauge(lambda F, mu: F(2)))(V, V)
