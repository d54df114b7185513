import json

import pytest

from dynquant.bialgebroid import (BialgebroidPresentation, check_dynamical_frt, comodule_check, corrupt_coproduct,
                                  corrupt_fusion, counit_fusion_check, emit_presentation, moment_map_check,
                                  presentation_report, shape_check)
from dynquant.repn import sl2_irrep, standard_rep, trivial_rep
from dynquant.rmatrix import dynamical_R
from dynquant.rootdata import build_root_datum

MODES = ["classical", "quantum"]


def test_trivial_presentation():
    triv = trivial_rep(build_root_datum("A1"))
    pres = emit_presentation([triv])
    report = presentation_report(pres, [triv])
    assert report.ok, report.summary()


def test_json_sections():
    V = sl2_irrep(2, "quantum")
    data = emit_presentation([V]).to_json()
    assert set(data) == {"version", "base", "generators", "relations", "coalgebra"}
    kinds = {r["kind"] for r in data["relations"]}
    assert {"moment_source", "moment_target", "fusion"} <= kinds
    assert data["base"]["type"] == "A1" and data["base"]["mode"] == "quantum"


def test_bidegree_of_generators():
    V = sl2_irrep(2)
    g = emit_presentation([V]).generators[V.name]
    # T_ij has source degree wt_j and target degree -wt_i
    assert g.bidegree(0, 1) == ((-1,), (-1,))
    assert g.bidegree(1, 0) == ((1,), (1,))


@pytest.mark.parametrize("mode", MODES)
def test_round_trip_is_byte_stable(mode):
    V = sl2_irrep(2, mode)
    pres = emit_presentation([V, sl2_irrep(3, mode)])
    text = pres.dumps()
    again = BialgebroidPresentation.loads(text)
    assert again.dumps() == text
    assert json.loads(text) == pres.to_json()


@pytest.mark.parametrize("mode", MODES)
def test_full_report(mode):
    reps = [sl2_irrep(2, mode), trivial_rep(build_root_datum("A1"), mode)]
    report = presentation_report(emit_presentation(reps), reps)
    assert report.ok, report.summary()


@pytest.mark.parametrize("mode", MODES)
def test_dynamical_frt(mode):
    V = sl2_irrep(2, mode)
    pres = emit_presentation([V])
    assert check_dynamical_frt(pres, V, V).ok


def test_dynamical_frt_sl3():
    V = standard_rep(build_root_datum("A2"))
    pres = emit_presentation([V])
    assert check_dynamical_frt(pres, V, V).ok


def test_corrupted_fusion_fails_frt():
    V = sl2_irrep(2, "quantum")
    pres = corrupt_fusion(emit_presentation([V]), (V.name, V.name))
    assert not check_dynamical_frt(pres, V, V).ok


def test_definition_variant_R_fails_quantum_frt():
    V = sl2_irrep(2, "quantum")
    pres = emit_presentation([V])
    R = dynamical_R(V, V, variant="definition")
    assert not check_dynamical_frt(pres, V, V, R=R).ok


def test_comodule_axioms():
    V = sl2_irrep(3)
    pres = emit_presentation([V])
    assert comodule_check(pres, V).ok
    bad = corrupt_coproduct(pres, pres.generators[V.name].name)
    assert not comodule_check(bad, V).ok


def test_structural_checks():
    V = sl2_irrep(2, "quantum")
    pres = emit_presentation([V])
    for check in (moment_map_check, counit_fusion_check, shape_check):
        assert check(pres).ok
