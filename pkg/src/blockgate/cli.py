"""Command-line interface.

Exit status: 0 on success, 1 on usage or input errors (diagnostics on
stderr), 2 when a verification or benchmark comparison fails.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from blockgate import _backend
from blockgate.circuit import (
    CircuitParseError,
    CircuitSpec,
    apply_operator,
    build_circuit_operator,
    build_circuit_oracle,
    parse_circuit,
    parse_ket,
)
from blockgate.embed import adjacent_swap_schedule, count_adjacent_swaps
from blockgate.errors import BlockGateError
from blockgate.gates import standard_gate
from blockgate.harness import DEFAULT_SEED, VERIFY_TOL, run_benchmark, verify_trials
from blockgate.linalg import dumps_matrix, loads_matrix, max_deviation
from blockgate.qcl import mt_probability, mt_probability_fast

EXIT_OK, EXIT_USAGE, EXIT_VERIFY = 0, 1, 2


class UsageError(Exception):
    pass


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.replace(" ", "").split(",") if x]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _load_circuit(path: str) -> CircuitSpec:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"{path}: {exc.strerror}") from None
    try:
        return parse_circuit(text)
    except CircuitParseError as exc:
        raise UsageError("\n".join(f"{path}: {d.location}: {d.message}" for d in exc.diagnostics)) from None


def _load_state(arg: str) -> np.ndarray:
    """Ket shorthand, or a path to a matrix JSON file (column vector or density)."""
    if arg.lstrip().startswith("|"):
        vec, _, _ = parse_ket(arg)
        return vec
    try:
        m = loads_matrix(Path(arg).read_text(encoding="utf-8"))
    except OSError as exc:
        raise UsageError(f"{arg}: {exc.strerror}") from None
    return m[:, 0].copy() if m.shape[1] == 1 else m


def _write(out: str | None, text: str) -> None:
    if out is None or out == "-":
        sys.stdout.write(text + "\n")
    else:
        Path(out).write_text(text + "\n", encoding="utf-8")


def _check_state_size(state: np.ndarray, spec: CircuitSpec) -> None:
    side = spec.d**spec.k
    if state.shape[0] != side:
        raise UsageError(f"state has dimension {state.shape[0]}, circuit needs {side} (d={spec.d}, k={spec.k})")


def cmd_build(args) -> int:
    spec = _load_circuit(args.circuit)
    _write(args.out, dumps_matrix(build_circuit_operator(spec)))
    return EXIT_OK


def cmd_apply(args) -> int:
    spec = _load_circuit(args.circuit)
    state = _load_state(args.state)
    _check_state_size(state, spec)
    out = apply_operator(build_circuit_operator(spec), state)
    if out.ndim == 1:
        out = out.reshape(-1, 1)
    _write(args.out, dumps_matrix(out))
    return EXIT_OK


def cmd_verify(args) -> int:
    worst = 0.0
    if args.circuit:
        spec = _load_circuit(args.circuit)
        block = build_circuit_operator(spec)
        reference, swaps = build_circuit_oracle(spec)
        dev = max_deviation(block, reference)
        worst = max(worst, dev)
        print(f"circuit {args.circuit}: adjacent swaps {swaps}, max deviation {dev:.6g}")
        k, d = spec.k, spec.d
    else:
        k, d = args.qubits, args.dim
    results = verify_trials(args.trials, args.seed, k, d)
    for r in results:
        print(f"trial {r.index:3d}: arity {r.arity} at {list(r.positions)}, swaps {r.swaps}, max deviation {r.deviation:.6g}")
        worst = max(worst, r.deviation)
    ok = worst <= VERIFY_TOL
    print(f"{'PASS' if ok else 'FAIL'}: max entrywise deviation {worst:.6g} (tolerance {VERIFY_TOL:g})")
    return EXIT_OK if ok else EXIT_VERIFY


def cmd_prob(args) -> int:
    spec = _load_circuit(args.circuit)
    if spec.d != 2:
        raise UsageError("truth probabilities are defined for qubits (d = 2) only")
    if args.rho:
        state = _load_state(args.rho)
    else:
        state = _load_state(args.state)
    _check_state_size(state, spec)
    targets = args.targets or (list(spec.targets) if spec.targets else None)
    if targets is None and len(spec.steps) == 1 and spec.steps[0].gate.arity == 2:
        targets = sorted(spec.steps[0].positions)
    if targets is None:
        raise UsageError("no target wires: pass --targets or set \"targets\" in the circuit")
    slow = mt_probability(build_circuit_operator(spec), state, targets)
    print(f"mt_probability        {slow:.6f}")
    result = {"targets": sorted(targets), "mt_probability": slow}
    fast_ok = (
        len(spec.steps) == 1
        and spec.steps[0].gate.arity == 2
        and spec.steps[0].positions[0] < spec.steps[0].positions[1]
        and sorted(targets) == list(spec.steps[0].positions)
    )
    if fast_ok:
        m, q = spec.steps[0].positions
        fast = mt_probability_fast(spec.steps[0].gate, spec.k, m, q, state)
        print(f"mt_probability_fast   {fast:.6f}")
        print(f"difference            {abs(fast - slow):.6g}")
        result.update(mt_probability_fast=fast, difference=abs(fast - slow))
    if args.json:
        _write(args.json, json.dumps(result))
    return EXIT_OK


def cmd_bench(args) -> int:
    positions = tuple(args.positions) if args.positions else (2, args.qubits - 1)
    gate = standard_gate(args.gate, args.dim)
    with _backend.use_backend(args.backend):
        report = run_benchmark(gate, args.qubits, positions, args.repeat)
    print(f"bench: gate {gate.name}, d={gate.d}, k={args.qubits}, positions {list(positions)}, backend {report.backend}")
    print(f"{'run':>4} {'block [s]':>12} {'oracle [s]':>12} {'swaps':>6} {'deviation':>12}")
    for r in report.records:
        print(f"{r.run:>4} {r.block_seconds:>12.6g} {r.oracle_seconds:>12.6g} {r.swaps:>6} {r.deviation:>12.6g}")
    ratio = report.median_block / report.median_oracle if report.median_oracle > 0 else float("inf")
    print(f"median block {report.median_block:.6g} s, median oracle {report.median_oracle:.6g} s, ratio {ratio:.6g}")
    if args.json:
        _write(args.json, json.dumps(report.to_dict(), indent=2))
    return EXIT_OK if report.max_deviation <= VERIFY_TOL else EXIT_VERIFY


def cmd_swaps(args) -> int:
    positions = args.positions
    schedule = adjacent_swap_schedule(positions)
    print(f"oracle adjacent swaps: {2 * len(schedule)}")
    if all(b > a for a, b in zip(positions, positions[1:])):
        print(f"closed-form count:     {count_adjacent_swaps(positions)}")
    else:
        print("closed-form count:     n/a (positions not strictly increasing)")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="blockgate", description="Block-matrix construction of gates on arbitrary wires.")
    sub = p.add_subparsers(dest="command", required=True)

    b = sub.add_parser("build", help="write the circuit operator as matrix JSON")
    b.add_argument("--circuit", required=True)
    b.add_argument("--out")
    b.set_defaults(func=cmd_build)

    a = sub.add_parser("apply", help="apply the circuit to a state")
    a.add_argument("--circuit", required=True)
    a.add_argument("--state", required=True, help="ket such as '|0110>' or '|0,2,1>d3', or a matrix JSON file")
    a.add_argument("--out")
    a.set_defaults(func=cmd_apply)

    v = sub.add_parser("verify", help="compare block constructions with the SWAP-chain oracle")
    v.add_argument("--circuit")
    v.add_argument("--trials", type=int, default=25)
    v.add_argument("--seed", type=int, default=DEFAULT_SEED)
    v.add_argument("--qubits", type=int, default=6)
    v.add_argument("--dim", type=int, default=2)
    v.set_defaults(func=cmd_verify)

    pr = sub.add_parser("prob", help="multi-target truth probability")
    pr.add_argument("--circuit", required=True)
    src = pr.add_mutually_exclusive_group(required=True)
    src.add_argument("--state")
    src.add_argument("--rho", help="matrix JSON file holding a density operator")
    pr.add_argument("--targets", type=_int_list)
    pr.add_argument("--json", help="also write the values as JSON to this path ('-' for stdout)")
    pr.set_defaults(func=cmd_prob)

    be = sub.add_parser("bench", help="time block construction against the oracle")
    be.add_argument("--qubits", type=int, default=12)
    be.add_argument("--dim", type=int, default=2)
    be.add_argument("--gate", default="cnot")
    be.add_argument("--positions", type=_int_list, help="default: 2,k-1")
    be.add_argument("--repeat", type=int, default=5)
    be.add_argument("--backend", choices=["auto", "compiled", "python"], default="auto")
    be.add_argument("--json", help="write the full report as JSON to this path")
    be.set_defaults(func=cmd_bench)

    s = sub.add_parser("swaps", help="adjacent SWAP count for a placement")
    s.add_argument("--positions", type=_int_list, required=True)
    s.set_defaults(func=cmd_swaps)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        return args.func(args)
    except (UsageError, BlockGateError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
