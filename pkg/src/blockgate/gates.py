"""Catalog of concrete gates for qubits and qudits."""

from __future__ import annotations

import functools
from dataclasses import dataclass, field

import numpy as np

from blockgate.errors import DimensionError, NotUnitaryError, UnknownGateError
from blockgate.linalg import EPS, as_matrix, unitarity_deviation

_HALF_P = (1 + 1j) / 2
_HALF_M = (1 - 1j) / 2


@dataclass(frozen=True, eq=False)
class GateSpec:
    """A named unitary acting on ``arity`` wires of local dimension ``d``."""

    name: str
    d: int
    arity: int
    matrix: np.ndarray = field(repr=False)

    def __post_init__(self):
        check_dim(self.d)
        if self.arity < 1:
            raise DimensionError(f"gate arity must be >= 1, got {self.arity}")
        m = as_matrix(self.matrix)
        side = self.d**self.arity
        if m.shape != (side, side):
            raise DimensionError(
                f"gate {self.name!r}: matrix is {m.shape[0]}x{m.shape[1]}, "
                f"expected {side}x{side} for d={self.d}, arity={self.arity}"
            )
        dev = unitarity_deviation(m)
        if dev > EPS:
            raise NotUnitaryError(f"gate {self.name!r} is not unitary (max deviation {dev:.3e})")
        m = m.copy()
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @property
    def side(self) -> int:
        return self.d**self.arity


def check_dim(d: int) -> None:
    if not isinstance(d, (int, np.integer)) or d < 2:
        raise DimensionError(f"qudit dimension must be an integer >= 2, got {d!r}")


def projector(d: int, j: int, k: int) -> np.ndarray:
    """The d x d matrix unit ``|b_j><b_k|``."""
    check_dim(d)
    if not (0 <= j < d and 0 <= k < d):
        raise IndexError(f"projector indices ({j}, {k}) out of range for d={d}")
    out = np.zeros((d, d), dtype=np.complex128)
    out[j, k] = 1.0
    return out


def qudit_swap(d: int) -> np.ndarray:
    """Two-qudit SWAP as a d x d grid of blocks; block (i, j) is ``P(j, i)``."""
    check_dim(d)
    out = np.zeros((d * d, d * d), dtype=np.complex128)
    for i in range(d):
        for j in range(d):
            out[i * d:(i + 1) * d, j * d:(j + 1) * d] = projector(d, j, i)
    return out


def _qutrit_sqrt_swap() -> np.ndarray:
    h, c = _HALF_P, _HALF_M
    # 1-based block labels (row, col) -> 3x3 block, as tabulated for the
    # adjacent two-qutrit root of SWAP
    blocks = {
        (1, 1): [[1, 0, 0], [0, h, 0], [0, 0, h]],
        (1, 2): [[0, 0, 0], [c, 0, 0], [0, 0, 0]],
        (1, 3): [[0, 0, 0], [0, 0, 0], [c, 0, 0]],
        (2, 1): [[0, c, 0], [0, 0, 0], [0, 0, 0]],
        (2, 2): [[h, 0, 0], [0, 1, 0], [0, 0, h]],
        (2, 3): [[0, 0, 0], [0, 0, 0], [0, c, 0]],
        (3, 1): [[0, 0, c], [0, 0, 0], [0, 0, 0]],
        (3, 2): [[0, 0, 0], [0, 0, c], [0, 0, 0]],
        (3, 3): [[h, 0, 0], [0, h, 0], [0, 0, 1]],
    }
    out = np.zeros((9, 9), dtype=np.complex128)
    for (i, j), block in blocks.items():
        out[3 * (i - 1):3 * i, 3 * (j - 1):3 * j] = block
    return out


def _qubit_matrices() -> dict[str, tuple[int, np.ndarray]]:
    cnot = np.eye(4, dtype=np.complex128)[[0, 1, 3, 2]]
    toffoli = np.eye(8, dtype=np.complex128)[[0, 1, 2, 3, 4, 5, 7, 6]]
    fredkin = np.eye(8, dtype=np.complex128)[[0, 1, 2, 3, 4, 6, 5, 7]]
    sqrt_swap = np.array(
        [[1, 0, 0, 0], [0, _HALF_P, _HALF_M, 0], [0, _HALF_M, _HALF_P, 0], [0, 0, 0, 1]],
        dtype=np.complex128,
    )
    return {
        "pauli_x": (1, np.array([[0, 1], [1, 0]], dtype=np.complex128)),
        "cnot": (2, cnot),
        "sqrt_swap": (2, sqrt_swap),
        "toffoli": (3, toffoli),
        "fredkin": (3, fredkin),
    }


QUBIT_ONLY = ("pauli_x", "cnot", "sqrt_swap", "toffoli", "fredkin")
ANY_DIM = ("identity", "swap")
GATE_NAMES = ANY_DIM + QUBIT_ONLY


@functools.lru_cache(maxsize=None)
def standard_gate(name: str, d: int = 2) -> GateSpec:
    """Look up a catalog gate by case-insensitive name and local dimension.

    ``identity`` and ``swap`` exist for every ``d``; ``sqrt_swap`` for
    ``d`` in {2, 3}; the remaining gates are qubit-only.

    Raises:
        UnknownGateError: unknown name or unsupported ``(name, d)`` pair.
    """
    key = name.strip().lower()
    check_dim(d)
    if key == "identity":
        return GateSpec("identity", d, 1, np.eye(d, dtype=np.complex128))
    if key == "swap":
        return GateSpec("swap", d, 2, qudit_swap(d))
    if key == "sqrt_swap" and d == 3:
        return GateSpec("sqrt_swap", 3, 2, _qutrit_sqrt_swap())
    if key in QUBIT_ONLY:
        if d != 2:
            raise UnknownGateError(f"gate {key!r} is not available for d={d}")
        arity, m = _qubit_matrices()[key]
        return GateSpec(key, 2, arity, m)
    raise UnknownGateError(f"unknown gate {name!r} (known: {', '.join(GATE_NAMES)})")


def custom_gate(matrix, arity: int, d: int = 2, name: str = "custom") -> GateSpec:
    return GateSpec(name, d, arity, matrix)
