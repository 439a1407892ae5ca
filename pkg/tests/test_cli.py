import json

import numpy as np
import pytest

from blockgate import cli
from blockgate.embed import embed_binary
from blockgate.gates import standard_gate
from blockgate.linalg import dumps_matrix, loads_matrix, max_deviation


@pytest.fixture
def write_circuit(tmp_path):
    def _write(doc, name="c.json"):
        path = tmp_path / name
        path.write_text(doc if isinstance(doc, str) else json.dumps(doc))
        return str(path)

    return _write


CNOT_25 = {"d": 2, "k": 6, "steps": [{"gate": "cnot", "positions": [2, 5]}]}


def test_build_to_file(write_circuit, tmp_path):
    out = tmp_path / "op.json"
    assert cli.main(["build", "--circuit", write_circuit(CNOT_25), "--out", str(out)]) == 0
    op = loads_matrix(out.read_text())
    assert max_deviation(op, embed_binary(standard_gate("cnot"), 6, 2, 5)) <= 1e-12


def test_build_stdout(write_circuit, capsys):
    doc = {"d": 2, "k": 1, "steps": [{"gate": "pauli_x", "positions": [1]}]}
    assert cli.main(["build", "--circuit", write_circuit(doc)]) == 0
    op = loads_matrix(capsys.readouterr().out)
    np.testing.assert_array_equal(op, [[0, 1], [1, 0]])


def test_apply_ket(write_circuit, capsys):
    # CNOT with control 2, target 5 flips wire 5
    assert cli.main(["apply", "--circuit", write_circuit(CNOT_25), "--state", "|010000>"]) == 0
    vec = loads_matrix(capsys.readouterr().out)[:, 0]
    assert vec[0b010010] == 1 and np.count_nonzero(vec) == 1


def test_apply_qudit_ket(write_circuit, capsys):
    doc = {"d": 3, "k": 3, "steps": [{"gate": "swap", "positions": [1, 3]}]}
    assert cli.main(["apply", "--circuit", write_circuit(doc), "--state", "|2,0,1>d3"]) == 0
    vec = loads_matrix(capsys.readouterr().out)[:, 0]
    assert vec[1 * 9 + 0 * 3 + 2] == 1


def test_apply_size_mismatch(write_circuit, capsys):
    assert cli.main(["apply", "--circuit", write_circuit(CNOT_25), "--state", "|01>"]) == 1
    assert "dimension 4" in capsys.readouterr().err


def test_parse_error_reported_on_stderr(write_circuit, capsys):
    bad = {"d": 2, "k": 4, "steps": [{"gate": "cnot", "positions": [2, 2]}]}
    path = write_circuit(bad)
    assert cli.main(["build", "--circuit", path]) == 1
    err = capsys.readouterr().err
    assert path in err and "$.steps[0].positions" in err and "duplicate wire position" in err


def test_missing_file(tmp_path, capsys):
    assert cli.main(["build", "--circuit", str(tmp_path / "nope.json")]) == 1
    assert "nope.json" in capsys.readouterr().err


def test_usage_error_exit_code(capsys):
    assert cli.main(["frobnicate"]) == 1
    assert cli.main([]) == 1


def test_verify_random(capsys):
    assert cli.main(["verify", "--trials", "5", "--qubits", "5", "--seed", "7"]) == 0
    out = capsys.readouterr().out
    assert out.count("trial") == 5 and out.strip().splitlines()[-1].startswith("PASS")


def test_verify_is_reproducible(capsys):
    cli.main(["verify", "--trials", "4", "--qubits", "4"])
    first = capsys.readouterr().out
    cli.main(["verify", "--trials", "4", "--qubits", "4"])
    assert capsys.readouterr().out == first


def test_verify_circuit(write_circuit, capsys):
    assert cli.main(["verify", "--circuit", write_circuit(CNOT_25), "--trials", "2"]) == 0
    assert "adjacent swaps 4" in capsys.readouterr().out


def test_verify_failure_exit_code(write_circuit, monkeypatch, capsys):
    def broken(spec):
        op = np.eye(spec.d**spec.k, dtype=complex)
        op[0, 0] = 1 + 1e-6
        return op, 0

    monkeypatch.setattr(cli, "build_circuit_oracle", broken)
    assert cli.main(["verify", "--circuit", write_circuit(CNOT_25), "--trials", "0"]) == 2
    assert "FAIL" in capsys.readouterr().out


def test_prob_fast_and_slow(write_circuit, capsys):
    doc = {"d": 2, "k": 5, "steps": [{"gate": "sqrt_swap", "positions": [2, 4]}]}
    assert cli.main(["prob", "--circuit", write_circuit(doc), "--state", "|01010>", "--json", "-"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0].split()[-1] == "1.000000" and lines[1].startswith("mt_probability_fast")
    result = json.loads(lines[-1])
    assert result["targets"] == [2, 4] and result["difference"] <= 1e-9


def test_prob_density_file(write_circuit, tmp_path, capsys):
    doc = {"d": 2, "k": 2, "steps": [{"gate": "sqrt_swap", "positions": [1, 2]}], "targets": [2]}
    rho = np.zeros((4, 4))
    rho[2, 2] = 1
    path = tmp_path / "rho.json"
    path.write_text(dumps_matrix(rho))
    assert cli.main(["prob", "--circuit", write_circuit(doc), "--rho", str(path)]) == 0
    out = capsys.readouterr().out
    assert "0.500000" in out and "fast" not in out


def test_prob_explicit_targets(write_circuit, capsys):
    assert cli.main(["prob", "--circuit", write_circuit(CNOT_25), "--state", "|010000>", "--targets", "5"]) == 0
    assert capsys.readouterr().out.split()[1] == "1.000000"


def test_prob_rejects_qudits(write_circuit, capsys):
    doc = {"d": 3, "k": 2, "steps": [], "targets": [1]}
    assert cli.main(["prob", "--circuit", write_circuit(doc), "--state", "|0,0>d3"]) == 1
    assert "qubits" in capsys.readouterr().err


def test_prob_needs_targets(write_circuit, capsys):
    doc = {"d": 2, "k": 2, "steps": []}
    assert cli.main(["prob", "--circuit", write_circuit(doc), "--state", "|00>"]) == 1
    assert "target" in capsys.readouterr().err


@pytest.mark.parametrize("backend", ["auto", "python"])
def test_bench_small(backend, tmp_path, capsys):
    out = tmp_path / "bench.json"
    code = cli.main(["bench", "--qubits", "5", "--repeat", "3", "--backend", backend, "--json", str(out)])
    assert code == 0
    report = json.loads(out.read_text())
    assert len(report["runs"]) == 3 and all(r["swaps"] == 2 for r in report["runs"])
    assert "median block" in capsys.readouterr().out


@pytest.mark.parametrize(
    "positions,oracle,closed",
    [("2,5", "4", "4"), ("2,11", "16", "16"), ("1,2,3", "0", "0"), ("5,2", "6", "n/a")],
)
def test_swaps(positions, oracle, closed, capsys):
    assert cli.main(["swaps", "--positions", positions]) == 0
    out = capsys.readouterr().out.splitlines()
    assert out[0].split()[-1] == oracle
    assert closed in out[1]


def test_swaps_bad_list(capsys):
    assert cli.main(["swaps", "--positions", "a,b"]) == 1
