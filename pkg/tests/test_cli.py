import json
import subprocess
import sys
from pathlib import Path

import pytest

from dynquant.cli import run
from dynquant.linalg import RationalMatrix
from dynquant.rootdata import build_root_datum

GOLDEN = Path(__file__).parent / "golden"

GOLDEN_CASES = {
    "fusion_A1_quantum_2_2.json": ["fusion", "--type", "A1", "--mode", "quantum", "--reps", "irrep(2),irrep(2)"],
    "weyl_A1_classical_2.json": ["weyl", "--type", "A1", "--mode", "classical", "--rep", "irrep(2)", "--word", "1"],
    "weyl_A2_classical_vector_121.json": ["weyl", "--type", "A2", "--mode", "classical", "--rep", "vector",
                                          "--word", "121"],
    "hc_A1.json": ["hc", "--type", "A1", "--mode", "classical"],
}


@pytest.mark.parametrize("name", sorted(GOLDEN_CASES))
def test_golden_outputs(name):
    code, out = run(GOLDEN_CASES[name])
    assert code == 0
    assert out.rstrip("\n") == (GOLDEN / name).read_text().rstrip("\n")


def test_fusion_example_matrix():
    code, out = run(GOLDEN_CASES["fusion_A1_quantum_2_2.json"])
    data = json.loads(out)
    F = build_root_datum("A1").field("quantum")
    J = RationalMatrix.from_json(F, data["matrix"])
    assert J[(1, 2)] == -F.qpow(-1, [-1]) / F.qint(1, [1])
    assert data["conventions"]["tensor_basis"].startswith("lexicographic")


def test_weyl_example_matrix():
    code, out = run(GOLDEN_CASES["weyl_A1_classical_2.json"])
    F = build_root_datum("A1").field("classical")
    A = RationalMatrix.from_json(F, json.loads(out)["matrix"])
    assert A[(1, 0)] == 1
    assert A[(0, 1)] == -F.affine(2, [1]) / F.affine(1, [1])


def test_dybe_on_trivial_reps():
    code, out = run(["dybe-check", "--type", "A1", "--mode", "quantum", "--reps", "trivial,trivial,trivial"])
    assert code == 0
    assert json.loads(out)["report"]["ok"]


def test_verification_failure_names_first_entry():
    code, out = run(["dybe-check", "--type", "A1", "--mode", "quantum", "--reps", "irrep(2),irrep(2),irrep(2)",
                     "--variant", "definition"])
    assert code == 1
    first = json.loads(out)["report"]["first_failure"]
    assert first["entry"] and first["lhs"] and first["rhs"]
    assert first["lhs"] != first["rhs"]


@pytest.mark.parametrize("argv,code", [
    (["weyl", "--type", "A2", "--mode", "classical", "--rep", "vector", "--word", "11"], 2),
    (["fusion", "--type", "A1", "--mode", "sideways", "--reps", "irrep(2),irrep(2)"], 2),
    (["fusion", "--type", "A1", "--mode", "classical", "--reps", "irrep("], 2),
    (["weyl", "--type", "A2", "--mode", "quantum", "--rep", "vector", "--word", "1"], 3),
    (["fusion", "--type", "E8", "--mode", "classical", "--reps", "trivial,trivial"], 3),
    (["hc", "--type", "A1", "--mode", "quantum"], 3),
])
def test_exit_codes(argv, code):
    assert run(argv)[0] == code


def test_determinism():
    argv = ["rmatrix", "--type", "A1", "--mode", "quantum", "--reps", "irrep(2),irrep(3)"]
    assert run(argv) == run(argv)


@pytest.mark.parametrize("fmt", ["plain", "latex"])
def test_text_formats(fmt):
    code, out = run(GOLDEN_CASES["weyl_A1_classical_2.json"] + ["--format", fmt])
    assert code == 0
    assert "λ" in out or "\\lambda" in out


def test_toml_config_with_flag_override(tmp_path):
    cfg = tmp_path / "job.toml"
    cfg.write_text('type = "A1"\nmode = "quantum"\nreps = "irrep(2),irrep(2)"\n')
    code, out = run(["fusion", "--config", str(cfg), "--mode", "classical"])
    assert code == 0
    assert json.loads(out)["conventions"]["mode"] == "classical"


def test_json_config(tmp_path):
    cfg = tmp_path / "job.json"
    cfg.write_text(json.dumps({"type": "A1", "mode": "classical", "rep": "irrep(2)", "word": "1"}))
    code, out = run(["weyl", "--config", str(cfg)])
    assert code == 0


def test_unknown_config_key(tmp_path):
    cfg = tmp_path / "job.toml"
    cfg.write_text('type = "A1"\ncolour = "blue"\n')
    assert run(["fusion", "--config", str(cfg)])[0] == 2


def test_out_file(tmp_path):
    target = tmp_path / "J.json"
    code, out = run(GOLDEN_CASES["fusion_A1_quantum_2_2.json"] + ["--out", str(target)])
    assert code == 0
    assert json.loads(target.read_text())["command"] == "fusion"


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "dynquant", "hc", "--type", "A1", "--mode", "classical"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["command"] == "hc"
