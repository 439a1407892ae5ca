"""Circuit description format, parser and operator builder.

A circuit is JSON::

    {"d": 2, "k": 6,
     "steps": [{"gate": "cnot", "positions": [2, 5]},
               {"gate": {"matrix": {...}, "arity": 1}, "positions": [3]}],
     "targets": [2, 5]}

Steps run in list order: the first step acts first, so the circuit
operator is ``U_T ... U_2 U_1``.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from typing import Any, NamedTuple

import numpy as np

from blockgate.embed import embed, swap_chain_oracle
from blockgate.errors import BlockGateError, SizeGuardError
from blockgate.gates import GATE_NAMES, GateSpec, custom_gate, standard_gate
from blockgate.linalg import EPS, as_matrix, identity, matmul, matrix_from_dict, matrix_to_dict, max_dim, unitarity_deviation


@dataclass(frozen=True, eq=False)
class Step:
    gate: GateSpec
    positions: tuple[int, ...]


@dataclass(frozen=True, eq=False)
class CircuitSpec:
    d: int
    k: int
    steps: tuple[Step, ...] = ()
    targets: tuple[int, ...] | None = None

    def __eq__(self, other):
        if not isinstance(other, CircuitSpec):
            return NotImplemented
        if (self.d, self.k, self.targets, len(self.steps)) != (other.d, other.k, other.targets, len(other.steps)):
            return False
        return all(
            a.positions == b.positions
            and a.gate.name == b.gate.name
            and a.gate.arity == b.gate.arity
            and np.array_equal(a.gate.matrix, b.gate.matrix)
            for a, b in zip(self.steps, other.steps)
        )

    __hash__ = None


class ParseDiagnostic(NamedTuple):
    location: str
    severity: str
    message: str

    def __str__(self):
        return f"{self.location}: {self.severity}: {self.message}"


class CircuitParseError(BlockGateError):
    def __init__(self, diagnostics: list[ParseDiagnostic]):
        self.diagnostics = list(diagnostics)
        super().__init__("; ".join(str(d) for d in self.diagnostics))


def _is_int(x) -> bool:
    return isinstance(x, int) and not isinstance(x, bool)


def parse_circuit(text: str) -> CircuitSpec:
    """Parse and validate circuit JSON.

    Raises:
        CircuitParseError: with one located diagnostic per problem found.
            JSON syntax errors are located by line and column, semantic
            errors by their path inside the document.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CircuitParseError([ParseDiagnostic(f"line {exc.lineno}, column {exc.colno}", "error", exc.msg)]) from None
    return circuit_from_dict(doc)


def circuit_from_dict(doc: Any) -> CircuitSpec:
    diags: list[ParseDiagnostic] = []

    def err(loc: str, msg: str) -> None:
        diags.append(ParseDiagnostic(loc, "error", msg))

    if not isinstance(doc, dict):
        raise CircuitParseError([ParseDiagnostic("$", "error", "circuit must be a JSON object")])
    for key in sorted(set(doc) - {"d", "k", "steps", "targets"}):
        err(f"$.{key}", "unknown field")
    d, k = doc.get("d"), doc.get("k")
    if not _is_int(d) or d < 2:
        err("$.d", f"local dimension must be an integer >= 2, got {d!r}")
        d = None
    if not _is_int(k) or k < 1:
        err("$.k", f"wire count must be a positive integer, got {k!r}")
        k = None
    if d is not None and k is not None and d**k > max_dim():
        err("$", f"d^k = {d}^{k} exceeds the dense size guard {max_dim()}")
    raw_steps = doc.get("steps")
    if not isinstance(raw_steps, list):
        err("$.steps", "steps must be a list")
        raw_steps = []

    steps = []
    for idx, raw in enumerate(raw_steps):
        loc = f"$.steps[{idx}]"
        if not isinstance(raw, dict):
            err(loc, "step must be an object with gate and positions")
            continue
        for key in sorted(set(raw) - {"gate", "positions"}):
            err(f"{loc}.{key}", "unknown field")
        gate = _parse_gate(raw.get("gate"), d, f"{loc}.gate", err)
        positions = raw.get("positions")
        pos_ok = isinstance(positions, list) and positions and all(_is_int(p) for p in positions)
        if not pos_ok:
            err(f"{loc}.positions", "positions must be a non-empty list of integers")
        else:
            if k is not None:
                for j, p in enumerate(positions):
                    if not 1 <= p <= k:
                        err(f"{loc}.positions[{j}]", f"wire position {p} out of range 1..{k}")
            if len(set(positions)) != len(positions):
                err(f"{loc}.positions", "duplicate wire position")
            if gate is not None and len(positions) != gate.arity:
                err(f"{loc}.positions", f"gate {gate.name!r} takes {gate.arity} positions, got {len(positions)}")
        if gate is not None and pos_ok:
            steps.append(Step(gate, tuple(positions)))

    targets = doc.get("targets")
    if targets is not None:
        if not isinstance(targets, list) or not targets or not all(_is_int(t) for t in targets):
            err("$.targets", "targets must be a non-empty list of integers")
            targets = None
        else:
            if k is not None:
                for j, t in enumerate(targets):
                    if not 1 <= t <= k:
                        err(f"$.targets[{j}]", f"target wire {t} out of range 1..{k}")
            if len(set(targets)) != len(targets):
                err("$.targets", "duplicate target wire")
            targets = tuple(targets)
    if diags:
        raise CircuitParseError(diags)
    return CircuitSpec(d, k, tuple(steps), targets)


def _parse_gate(raw, d, loc, err) -> GateSpec | None:
    if isinstance(raw, str):
        if d is None:
            return None
        try:
            return standard_gate(raw, d)
        except BlockGateError as exc:
            err(loc, str(exc))
            return None
    if isinstance(raw, dict):
        arity = raw.get("arity")
        if not _is_int(arity) or arity < 1:
            err(f"{loc}.arity", f"arity must be a positive integer, got {arity!r}")
            return None
        try:
            m = matrix_from_dict(raw.get("matrix"))
        except (ValueError, BlockGateError) as exc:
            err(f"{loc}.matrix", str(exc))
            return None
        if d is None:
            return None
        side = d**arity
        if m.shape != (side, side):
            err(f"{loc}.matrix", f"matrix is {m.shape[0]}x{m.shape[1]}, expected {side}x{side} for d={d}, arity={arity}")
            return None
        dev = unitarity_deviation(m)
        if dev > EPS:
            err(f"{loc}.matrix", f"matrix is not unitary (max deviation {dev:.3e})")
            return None
        return custom_gate(m, arity, d, name=str(raw.get("name", "custom")))
    err(loc, f"gate must be a catalog name ({', '.join(GATE_NAMES)}) or an inline matrix object")
    return None


def circuit_to_dict(spec: CircuitSpec) -> dict:
    steps = []
    for step in spec.steps:
        g = step.gate
        if g.name in GATE_NAMES and _is_catalog(g):
            gate = g.name
        else:
            gate = {"matrix": matrix_to_dict(g.matrix), "arity": g.arity}
            if g.name != "custom":
                gate["name"] = g.name
        steps.append({"gate": gate, "positions": list(step.positions)})
    out = {"d": spec.d, "k": spec.k, "steps": steps}
    if spec.targets is not None:
        out["targets"] = list(spec.targets)
    return out


def _is_catalog(g: GateSpec) -> bool:
    try:
        ref = standard_gate(g.name, g.d)
    except BlockGateError:
        return False
    return ref.arity == g.arity and np.array_equal(ref.matrix, g.matrix)


def dumps_circuit(spec: CircuitSpec) -> str:
    return json.dumps(circuit_to_dict(spec), indent=2)


def _check_guard(spec: CircuitSpec) -> None:
    if spec.d**spec.k > max_dim():
        raise SizeGuardError(f"d^k = {spec.d}^{spec.k} exceeds the dense size guard {max_dim()}")


def build_circuit_operator(spec: CircuitSpec) -> np.ndarray:
    """Circuit unitary with every step embedded by the block constructions."""
    _check_guard(spec)
    op = None
    for step in spec.steps:
        e = embed(step.gate, step.positions, spec.k)
        op = e if op is None else matmul(e, op)
    return identity(spec.d**spec.k) if op is None else op


def build_circuit_oracle(spec: CircuitSpec) -> tuple[np.ndarray, int]:
    """Circuit unitary from adjacent-SWAP chains; also returns the SWAP count."""
    _check_guard(spec)
    op, swaps = None, 0
    for step in spec.steps:
        e, n = swap_chain_oracle(step.gate, spec.k, step.positions)
        swaps += n
        op = e if op is None else matmul(e, op)
    return (identity(spec.d**spec.k) if op is None else op), swaps


# -- ket shorthand ------------------------------------------------------------------

_QUBIT_KET = re.compile(r"^\|([01]+)>$")
_QUDIT_KET = re.compile(r"^\|(\d+(?:,\d+)*)>d(\d+)$")


def parse_ket(text: str) -> tuple[np.ndarray, int, int]:
    """Parse ``|0110>`` (qubits) or ``|0,2,1>d3`` (qudits).

    Returns the amplitude vector, the local dimension and the wire count.
    """
    s = text.strip()
    m = _QUBIT_KET.match(s)
    if m:
        digits, d = [int(c) for c in m.group(1)], 2
    else:
        m = _QUDIT_KET.match(s)
        if not m:
            raise ValueError(f"cannot parse ket {text!r}; expected '|0110>' or '|0,2,1>d3'")
        digits, d = [int(c) for c in m.group(1).split(",")], int(m.group(2))
        if d < 2:
            raise ValueError(f"ket dimension must be >= 2, got d={d}")
        bad = [x for x in digits if x >= d]
        if bad:
            raise ValueError(f"ket digit {bad[0]} is not valid for d={d}")
    k = len(digits)
    if d**k > max_dim():
        raise SizeGuardError(f"ket of {k} wires with d={d} exceeds the dense size guard {max_dim()}")
    index = 0
    for x in digits:
        index = index * d + x
    vec = np.zeros(d**k, dtype=np.complex128)
    vec[index] = 1.0
    return vec, d, k


def ket_digits(index: int, k: int, d: int = 2) -> tuple[int, ...]:
    """d-ary digits of a basis index, wire 1 first."""
    out = []
    for _ in range(k):
        out.append(index % d)
        index //= d
    return tuple(reversed(out))


def basis_index(digits, d: int = 2) -> int:
    index = 0
    for x in digits:
        index = index * d + int(x)
    return index


def apply_operator(op: np.ndarray, state: np.ndarray) -> np.ndarray:
    """Evolve a state vector (``U psi``) or a density matrix (``U rho U^+``)."""
    op = as_matrix(op)
    state = np.asarray(state, dtype=np.complex128)
    if state.ndim == 1:
        return op @ state
    rho = as_matrix(state)
    return matmul(matmul(op, rho), np.ascontiguousarray(op.conj().T))
