"""Block-matrix construction of quantum gates on arbitrary qubit/qudit wires."""

from blockgate._backend import available as available_backends
from blockgate._backend import name as backend_name
from blockgate._backend import use_backend
from blockgate.circuit import CircuitSpec, build_circuit_operator, parse_circuit
from blockgate.embed import (
    compose_swaps,
    count_adjacent_swaps,
    embed,
    embed_adjacent,
    embed_binary,
    embed_nary,
    swap_chain_oracle,
    swap_first_last,
    swap_pair,
)
from blockgate.errors import BlockGateError
from blockgate.gates import GateSpec, custom_gate, projector, qudit_swap, standard_gate
from blockgate.linalg import dagger, is_unitary, kron, matmul, max_deviation, trace
from blockgate.qcl import apply_channel, lambda_operator, mt_probability, mt_probability_fast, truth_probability

__version__ = "0.1.0"

__all__ = [
    "BlockGateError",
    "CircuitSpec",
    "GateSpec",
    "apply_channel",
    "available_backends",
    "backend_name",
    "build_circuit_operator",
    "compose_swaps",
    "count_adjacent_swaps",
    "custom_gate",
    "dagger",
    "embed",
    "embed_adjacent",
    "embed_binary",
    "embed_nary",
    "is_unitary",
    "kron",
    "lambda_operator",
    "matmul",
    "max_deviation",
    "mt_probability",
    "mt_probability_fast",
    "parse_circuit",
    "projector",
    "qudit_swap",
    "standard_gate",
    "swap_chain_oracle",
    "swap_first_last",
    "swap_pair",
    "trace",
    "truth_probability",
    "use_backend",
]
