import json

import numpy as np
import pytest

from blockgate.circuit import (
    CircuitParseError,
    apply_operator,
    build_circuit_operator,
    build_circuit_oracle,
    circuit_from_dict,
    dumps_circuit,
    parse_circuit,
    parse_ket,
)
from blockgate.embed import embed_binary, swap_pair
from blockgate.errors import SizeGuardError
from blockgate.gates import standard_gate
from blockgate.linalg import EPS, is_unitary, kron_all, matrix_to_dict, max_deviation, random_unitary

CNOT = standard_gate("cnot")


def circuit(d, k, steps, **extra):
    return json.dumps({"d": d, "k": k, "steps": steps, **extra})


class TestParse:
    def test_single_cnot(self):
        spec = parse_circuit('{"d":2,"k":6,"steps":[{"gate":"cnot","positions":[2,5]}]}')
        assert (spec.d, spec.k) == (2, 6)
        assert len(spec.steps) == 1
        assert spec.steps[0].gate.name == "cnot" and spec.steps[0].positions == (2, 5)

    def test_empty(self):
        spec = parse_circuit('{"d":2,"k":2,"steps":[]}')
        np.testing.assert_array_equal(build_circuit_operator(spec), np.eye(4))

    def test_duplicate_positions(self):
        with pytest.raises(CircuitParseError) as exc:
            parse_circuit('{"d":2,"k":4,"steps":[{"gate":"cnot","positions":[2,2]}]}')
        diags = exc.value.diagnostics
        assert any("duplicate wire position" in d.message and d.location == "$.steps[0].positions" for d in diags)

    def test_syntax_error_located(self):
        with pytest.raises(CircuitParseError) as exc:
            parse_circuit('{"d": 2,\n "k": }')
        (diag,) = exc.value.diagnostics
        assert diag.location.startswith("line 2")

    @pytest.mark.parametrize(
        "text,location,fragment",
        [
            (circuit(2, 3, [{"gate": "hadamard", "positions": [1]}]), "$.steps[0].gate", "unknown gate"),
            (circuit(3, 3, [{"gate": "cnot", "positions": [1, 2]}]), "$.steps[0].gate", "d=3"),
            (circuit(2, 3, [{"gate": "cnot", "positions": [1, 4]}]), "$.steps[0].positions[1]", "out of range"),
            (circuit(2, 3, [{"gate": "cnot", "positions": [1]}]), "$.steps[0].positions", "takes 2"),
            (circuit(2, 0, []), "$.k", "positive"),
            (circuit(1, 2, []), "$.d", ">= 2"),
            (circuit(2, 20, []), "$", "size guard"),
            (circuit(2, 3, [], targets=[4]), "$.targets[0]", "out of range"),
            (circuit(2, 3, [{"gate": "cnot", "positions": [1, 2], "extra": 1}]), "$.steps[0].extra", "unknown"),
            ('{"d":2,"k":2}', "$.steps", "list"),
            ("[]", "$", "object"),
        ],
    )
    def test_diagnostics(self, text, location, fragment):
        with pytest.raises(CircuitParseError) as exc:
            parse_circuit(text)
        assert any(d.location == location and fragment in d.message for d in exc.value.diagnostics), exc.value.diagnostics

    def test_non_unitary_inline_reports_deviation(self):
        bad = {"matrix": matrix_to_dict(np.array([[1, 1], [0, 1]])), "arity": 1}
        with pytest.raises(CircuitParseError) as exc:
            parse_circuit(circuit(2, 2, [{"gate": bad, "positions": [1]}]))
        (diag,) = exc.value.diagnostics
        assert "max deviation" in diag.message and diag.location == "$.steps[0].gate.matrix"

    def test_collects_several_problems(self):
        text = circuit(2, 3, [{"gate": "nope", "positions": [1]}, {"gate": "cnot", "positions": [3, 3]}])
        with pytest.raises(CircuitParseError) as exc:
            parse_circuit(text)
        assert len(exc.value.diagnostics) >= 2

    def test_case_insensitive_names(self):
        spec = parse_circuit(circuit(2, 2, [{"gate": "SWAP", "positions": [1, 2]}]))
        assert spec.steps[0].gate.name == "swap"

    def test_inline_gate(self, rng):
        u = random_unitary(4, rng)
        spec = parse_circuit(circuit(2, 3, [{"gate": {"matrix": matrix_to_dict(u), "arity": 2}, "positions": [3, 1]}]))
        assert max_deviation(build_circuit_operator(spec), embed_binary(spec.steps[0].gate, 3, 3, 1)) == 0.0


class TestRoundTrip:
    def test_round_trip(self, rng):
        u = random_unitary(3, rng)
        doc = {
            "d": 3,
            "k": 4,
            "steps": [
                {"gate": "swap", "positions": [1, 4]},
                {"gate": {"matrix": matrix_to_dict(u), "arity": 1}, "positions": [2]},
                {"gate": "sqrt_swap", "positions": [4, 2]},
            ],
            "targets": [1, 3],
        }
        spec = circuit_from_dict(doc)
        again = parse_circuit(dumps_circuit(spec))
        assert again == spec
        assert parse_circuit(dumps_circuit(again)) == spec


class TestBuild:
    def test_cnot_five_factor_product(self):
        spec = parse_circuit(circuit(2, 6, [{"gate": "cnot", "positions": [2, 5]}]))
        s45, s34 = swap_pair(6, 4, 5), swap_pair(6, 3, 4)
        expected = s45 @ s34 @ kron_all(np.eye(2), CNOT.matrix, np.eye(8)) @ s34 @ s45
        assert max_deviation(build_circuit_operator(spec), expected) <= 1e-12

    def test_swap_twice(self):
        spec = parse_circuit(circuit(2, 6, [{"gate": "swap", "positions": [2, 5]}] * 2))
        np.testing.assert_array_equal(build_circuit_operator(spec), np.eye(64))

    @pytest.mark.parametrize("k,m,q", [(4, 1, 3), (6, 2, 5)])
    def test_sqrt_swap_twice(self, k, m, q):
        spec = parse_circuit(circuit(2, k, [{"gate": "sqrt_swap", "positions": [m, q]}] * 2))
        assert max_deviation(build_circuit_operator(spec), swap_pair(k, m, q)) <= EPS

    def test_step_order(self):
        # X on wire 1 then CNOT(1, 2): |00> -> |10> -> |11>
        spec = parse_circuit(circuit(2, 2, [{"gate": "pauli_x", "positions": [1]}, {"gate": "cnot", "positions": [1, 2]}]))
        op = build_circuit_operator(spec)
        assert np.argmax(np.abs(op[:, 0])) == 3

    def test_matches_oracle_and_unitary(self, rng):
        steps = [
            {"gate": "toffoli", "positions": [5, 1, 3]},
            {"gate": {"matrix": matrix_to_dict(random_unitary(4, rng)), "arity": 2}, "positions": [4, 2]},
            {"gate": "fredkin", "positions": [2, 3, 4]},
        ]
        spec = parse_circuit(circuit(2, 5, steps))
        op = build_circuit_operator(spec)
        ref, swaps = build_circuit_oracle(spec)
        assert max_deviation(op, ref) <= 1e-9
        assert is_unitary(op, 1e-10)
        assert swaps > 0

    def test_size_guard(self, monkeypatch):
        spec = parse_circuit(circuit(2, 5, []))
        monkeypatch.setenv("BLOCKGATE_MAX_DIM", "16")
        with pytest.raises(SizeGuardError):
            build_circuit_operator(spec)


class TestKets:
    def test_qubit(self):
        vec, d, k = parse_ket("|110010>")
        assert (d, k) == (2, 6) and vec[0b110010] == 1 and vec.sum() == 1

    def test_qudit(self):
        vec, d, k = parse_ket("|0,2,1>d3")
        assert (d, k) == (3, 3) and vec[0 * 9 + 2 * 3 + 1] == 1

    @pytest.mark.parametrize("text", ["110", "|12>", "|0,3>d3", "|0,1>d1", "|>"])
    def test_rejects(self, text):
        with pytest.raises(ValueError):
            parse_ket(text)

    def test_apply_vector_and_density(self):
        spec = parse_circuit(circuit(2, 3, [{"gate": "swap", "positions": [1, 3]}]))
        op = build_circuit_operator(spec)
        vec, _, _ = parse_ket("|100>")
        out = apply_operator(op, vec)
        assert out[0b001] == 1
        rho = np.outer(vec, vec)
        np.testing.assert_array_equal(apply_operator(op, rho), np.outer(out, out))
