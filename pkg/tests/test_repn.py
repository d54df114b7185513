import pytest
from hypothesis import given, strategies as st

from dynquant.repn import (check_relations, double_dual_twist, dual, parse_rep_spec, sl2_irrep, split_top_level,
                           standard_rep, tensor, trivial_rep)
from dynquant.rootdata import UnsupportedType, build_root_datum

MODES = ["classical", "quantum"]


@given(st.integers(1, 5), st.sampled_from(MODES))
def test_irreps_satisfy_relations(dim, mode):
    assert check_relations(sl2_irrep(dim, mode)).ok


@given(st.integers(1, 3), st.integers(1, 3), st.sampled_from(MODES))
def test_tensor_products_satisfy_relations(a, b, mode):
    V = tensor(sl2_irrep(a, mode), sl2_irrep(b, mode))
    assert V.dim == a * b
    assert check_relations(V).ok


@pytest.mark.parametrize("mode", MODES)
@pytest.mark.parametrize("name", ["A2", "A3"])
def test_vector_and_duals(name, mode):
    datum = build_root_datum(name)
    V = standard_rep(datum, mode)
    assert V.dim == datum.rank + 1
    for R in (V, dual(V), trivial_rep(datum, mode), tensor(V, dual(V))):
        assert check_relations(R).ok, check_relations(R).failures()


@pytest.mark.parametrize("mode", MODES)
@pytest.mark.parametrize("make", [lambda m: sl2_irrep(3, m), lambda m: standard_rep(build_root_datum("A2"), m)])
def test_double_dual_twist_is_module_map(mode, make):
    V = make(mode)
    VV = dual(dual(V))
    P = double_dual_twist(V)
    for gen in ("E", "F"):
        for i in range(V.datum.rank):
            assert P @ V.matrix(gen, i) == VV.matrix(gen, i) @ P


def test_sl2_irrep_values():
    V = sl2_irrep(3, "quantum")
    F = V.field
    assert list(V.weights) == [(2,), (0,), (-2,)]
    E = V.matrix("E", 0)
    assert E[(0, 1)] == F.qint(2)
    assert E[(1, 2)] == F.qint(2)
    assert V.matrix("F", 0)[(1, 0)] == 1


def test_corrupted_module_fails_relations():
    V = sl2_irrep(3, "classical")
    F = V.field
    bad = V.with_matrices(E=[{(0, 1): F(2), (1, 2): F(3)}])
    report = check_relations(bad)
    assert not report.ok
    assert report.failures()


def test_vector_outside_type_a():
    with pytest.raises(UnsupportedType):
        standard_rep(build_root_datum("B2"))


def test_rep_spec_parsing():
    A1 = build_root_datum("A1")
    assert split_top_level("tensor(irrep(2),irrep(3)),trivial") == ["tensor(irrep(2),irrep(3))", "trivial"]
    R = parse_rep_spec("tensor(irrep(2),dual(irrep(3)))", A1, "quantum")
    assert R.dim == 6
    assert check_relations(R).ok
    with pytest.raises(ValueError):
        parse_rep_spec("irrep(", A1, "classical")
