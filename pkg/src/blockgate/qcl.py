"""Truth probabilities for quantum computational logic.

A qubit register is *true* on a set of target wires when every target wire
reads 1. The standard convention uses the last wire as the only target;
the multi-target variant takes an explicit set of target wires.
"""

from __future__ import annotations

import math
from typing import Iterable

import numpy as np

from blockgate.embed import validate_positions
from blockgate.errors import DimensionError, NotUnitaryError, PlacementError, ProbabilityError
from blockgate.gates import GateSpec
from blockgate.linalg import EPS, as_matrix, check_side, dagger, grid_embed, matmul, sandwich, trace_product, unitarity_deviation

P1 = np.array([[0, 0], [0, 1]], dtype=np.complex128)

# Past this slack a probability is an error rather than rounding noise.
PROBABILITY_SLACK = 1e-8


def num_wires(side: int, d: int = 2) -> int:
    k = round(math.log(side, d)) if side > 1 else 0
    if k < 1 or d**k != side:
        raise DimensionError(f"side {side} is not a power d^k of d={d} with k >= 1")
    return k


def density_from_state(psi, tol: float = EPS) -> np.ndarray:
    """``|psi><psi|`` for a normalised amplitude vector."""
    vec = np.asarray(psi, dtype=np.complex128).ravel()
    norm = np.linalg.norm(vec)
    if abs(norm - 1.0) > tol:
        raise ValueError(f"state vector is not normalised (norm {norm:.12g})")
    return np.outer(vec, vec.conj())


def as_density(state, d: int = 2, tol: float = EPS) -> np.ndarray:
    """Accept a state vector or a density matrix and return a checked density matrix.

    Checks Hermiticity, unit trace, a non-negative diagonal and
    ``Tr(rho^2) <= 1``, all within ``tol``.
    """
    arr = np.asarray(state, dtype=np.complex128)
    if arr.ndim == 1 or (arr.ndim == 2 and arr.shape[1] == 1 and arr.shape[0] > 1):
        rho = density_from_state(arr, tol)
    else:
        rho = as_matrix(arr)
    if rho.shape[0] != rho.shape[1]:
        raise DimensionError(f"density operator must be square, got {rho.shape}")
    num_wires(rho.shape[0], d)
    if np.max(np.abs(rho - rho.conj().T)) > tol:
        raise ValueError("density operator is not Hermitian")
    tr = np.trace(rho)
    if abs(tr - 1.0) > tol:
        raise ValueError(f"density operator has trace {tr.real:.12g}, expected 1")
    herm = (rho + rho.conj().T) / 2
    if np.min(np.diag(herm).real) < -tol:
        raise ValueError("density operator has a negative diagonal entry")
    purity = float(np.sum(np.abs(herm) ** 2))
    if purity > 1.0 + tol:
        raise ValueError(f"density operator has purity {purity:.12g} > 1")
    return np.ascontiguousarray(rho)


def _check_unitary(u: np.ndarray) -> np.ndarray:
    u = as_matrix(u)
    dev = unitarity_deviation(u)
    if dev > EPS:
        raise NotUnitaryError(f"evolution is not unitary (max deviation {dev:.3e})")
    return u


def apply_channel(u, rho) -> np.ndarray:
    """``U rho U^+`` for a unitary ``U``."""
    u = _check_unitary(u)
    rho = as_matrix(rho)
    if u.shape[0] != rho.shape[0] or rho.shape[0] != rho.shape[1]:
        raise DimensionError(f"unitary is {u.shape[0]}x{u.shape[1]} but rho is {rho.shape[0]}x{rho.shape[1]}")
    return matmul(matmul(u, rho), dagger(u))


def _clamp(value: complex) -> float:
    if abs(value.imag) > PROBABILITY_SLACK:
        raise ProbabilityError(f"probability has imaginary part {value.imag:.3e}")
    p = value.real
    if p < -PROBABILITY_SLACK or p > 1 + PROBABILITY_SLACK:
        raise ProbabilityError(f"probability {p:.12g} lies outside [0, 1]")
    return min(max(p, 0.0), 1.0)


def check_targets(targets: Iterable[int], k: int) -> tuple[int, ...]:
    tgt = validate_positions(sorted(set(int(t) for t in targets)), k)
    return tgt


def target_indicator(k: int, targets: Iterable[int]) -> np.ndarray:
    """Diagonal of ``P_a (x) ... (x) P_k``: 1 where every target bit is 1."""
    tgt = check_targets(targets, k)
    idx = np.arange(2**k)
    keep = np.ones(2**k, dtype=bool)
    for t in tgt:
        keep &= ((idx >> (k - t)) & 1).astype(bool)
    return keep.astype(np.float64)


def truth_projector(k: int, targets: Iterable[int]) -> np.ndarray:
    """Tensor product with ``P1`` on target wires and ``I`` elsewhere."""
    check_side(2**k)
    return np.diag(target_indicator(k, targets)).astype(np.complex128)


def _projected_trace(rho: np.ndarray, k: int, targets: Iterable[int]) -> complex:
    # the projector is diagonal, so Tr(P rho) only reads rho's diagonal
    return complex(np.dot(target_indicator(k, targets), np.diag(rho)))


def truth_probability(rho) -> float:
    """Probability that the last wire reads 1 (qubits only)."""
    rho = as_density(rho, 2)
    k = num_wires(rho.shape[0], 2)
    return _clamp(_projected_trace(rho, k, [k]))


def mt_probability(u, rho, targets: Iterable[int]) -> float:
    """Probability that every target wire reads 1 after evolving by ``U``."""
    rho = as_density(rho, 2)
    k = num_wires(rho.shape[0], 2)
    out = apply_channel(u, rho)
    return _clamp(_projected_trace(out, k, targets))


def _check_qubit_binary(gate: GateSpec) -> None:
    if gate.d != 2 or gate.arity != 2:
        raise DimensionError(f"needs a two-qubit gate, got d={gate.d}, arity={gate.arity}")


def lambda_operator(gate: GateSpec, n: int) -> np.ndarray:
    """Pulled-back truth projector of a two-qubit gate spanning ``n + 1`` wires.

    The 2 x 2 block grid with block (i, j) equal to
    ``I (x) (U_2i^+ P1 U_2j)`` built from the lower blocks ``U_21``,
    ``U_22`` of the gate.
    """
    _check_qubit_binary(gate)
    if n < 1:
        raise PlacementError(f"gap n must be >= 1, got {n}")
    check_side(2 ** (n + 1))
    u = gate.matrix
    lower = (u[2:, :2], u[2:, 2:])
    blocks = np.empty((2, 2, 2, 2), dtype=np.complex128)
    for i in range(2):
        for j in range(2):
            blocks[i, j] = lower[i].conj().T @ P1 @ lower[j]
    return grid_embed(blocks, 1, 2 ** (n - 1), 1)


def mt_probability_fast(gate: GateSpec, k: int, m: int, q: int, rho) -> float:
    """Two-target probability for a two-qubit gate on wires ``m < q``.

    Evaluates ``Tr[(I (x) Lambda (x) I) rho]`` without building the
    embedded unitary; both ``m`` and ``q`` are treated as targets.
    """
    _check_qubit_binary(gate)
    if not 1 <= m < q <= k:
        raise PlacementError(f"needs 1 <= m < q <= k, got m={m}, q={q}, k={k}")
    rho = as_density(rho, 2)
    if rho.shape[0] != 2**k:
        raise DimensionError(f"rho has side {rho.shape[0]}, expected 2^{k}")
    lam = sandwich(lambda_operator(gate, q - m), 2 ** (m - 1), 2 ** (k - q))
    return _clamp(trace_product(lam, rho))
