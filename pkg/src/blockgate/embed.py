"""Gates on arbitrary wires of a k-wire register.

Wires are numbered from 1; wire 1 is the leftmost tensor factor, i.e. the
most significant d-ary digit of a row or column index.

The block constructions (:func:`embed_adjacent`, :func:`swap_first_last`,
:func:`swap_pair`, :func:`embed_binary`) only assemble identity-padded
blocks and never multiply full-size matrices. :func:`swap_chain_oracle`
is the naive reference: it moves the target wires next to each other with
adjacent SWAPs, applies the gate, and moves them back, multiplying every
factor at full size.
"""

from __future__ import annotations

from typing import NamedTuple, Sequence

import numpy as np

from blockgate.errors import PlacementError
from blockgate.gates import GateSpec, check_dim, projector, qudit_swap, standard_gate
from blockgate.linalg import check_side, dagger, grid_embed, matmul, sandwich


def _check_register(k: int, d: int) -> None:
    check_dim(d)
    if k < 1:
        raise PlacementError(f"register needs at least one wire, got k={k}")
    check_side(d**k)


def validate_positions(positions: Sequence[int], k: int) -> tuple[int, ...]:
    pos = tuple(int(p) for p in positions)
    if not pos:
        raise PlacementError("at least one wire position is required")
    for p in pos:
        if not 1 <= p <= k:
            raise PlacementError(f"wire position {p} out of range 1..{k}")
    if len(set(pos)) != len(pos):
        raise PlacementError(f"duplicate wire position in {list(pos)}")
    return pos


def gate_blocks(matrix: np.ndarray, d: int) -> np.ndarray:
    """Split a two-wire gate into its d x d grid of d x d blocks.

    ``out[i, j]`` is the block in block-row ``i`` and block-column ``j``.
    """
    return np.ascontiguousarray(np.asarray(matrix).reshape(d, d, d, d).transpose(0, 2, 1, 3))


def embed_adjacent(gate: GateSpec, m: int, k: int) -> np.ndarray:
    """``I (x) U (x) I`` with the gate's first input on wire ``m``."""
    d, n = gate.d, gate.arity
    _check_register(k, d)
    if m < 1 or m - 1 + n > k:
        raise PlacementError(f"{n}-wire gate at wire {m} does not fit in {k} wires")
    return sandwich(gate.matrix, d ** (m - 1), d ** (k - n - m + 1))


def _swap_blocks(d: int) -> np.ndarray:
    blocks = np.empty((d, d, d, d), dtype=np.complex128)
    for i in range(d):
        for j in range(d):
            blocks[i, j] = projector(d, j, i)
    return blocks


def swap_first_last(n: int, d: int = 2) -> np.ndarray:
    """SWAP of wires 1 and ``n`` in an ``n``-wire register.

    The d x d block grid whose block (i, j) is ``I (x) P(j, i)``; for qubits
    that is ``[[P0, L1], [L0, P1]]`` with identity padding.
    """
    check_dim(d)
    if n < 2:
        raise PlacementError(f"first/last swap needs n >= 2 wires, got {n}")
    check_side(d**n)
    return grid_embed(_swap_blocks(d), 1, d ** (n - 2), 1)


def swap_pair(k: int, m: int, q: int, d: int = 2) -> np.ndarray:
    """Exchange wires ``m < q`` of a ``k``-wire register."""
    _check_register(k, d)
    if not 1 <= m < q <= k:
        raise PlacementError(f"swap pair needs 1 <= m < q <= k, got m={m}, q={q}, k={k}")
    return grid_embed(_swap_blocks(d), d ** (m - 1), d ** (q - m - 1), d ** (k - q))


def embed_binary(gate: GateSpec, k: int, m: int, q: int) -> np.ndarray:
    """Two-wire gate with input 1 on wire ``m`` and input 2 on wire ``q``.

    For ``m < q`` the window between the wires is the block grid
    ``[I (x) U_ij]``. For ``q < m`` the gate is first conjugated by the
    adjacent SWAP so the same grid applies with the wires in order.
    """
    if gate.arity != 2:
        raise PlacementError(f"embed_binary needs a two-wire gate, got arity {gate.arity}")
    d = gate.d
    _check_register(k, d)
    validate_positions((m, q), k)
    u = gate.matrix
    if q < m:
        s = qudit_swap(d)
        u = s @ u @ s  # 4-wire-local, d^2 x d^2
        m, q = q, m
    return grid_embed(gate_blocks(u, d), d ** (m - 1), d ** (q - m - 1), d ** (k - q))


def _is_contiguous(pos: Sequence[int]) -> bool:
    return all(b == a + 1 for a, b in zip(pos, pos[1:]))


def slot_transpositions(positions: Sequence[int], k: int) -> list[tuple[int, int]]:
    """Wire transpositions that carry ``positions[i]`` to slot ``min + i``.

    Returned in application order as ``(low, high)`` pairs.
    """
    pos = validate_positions(positions, k)
    start = min(pos)
    layout = list(range(1, k + 1))  # layout[slot - 1] = wire currently there
    out = []
    for i, wire in enumerate(pos):
        cur = layout.index(wire) + 1
        target = start + i
        if cur != target:
            lo, hi = sorted((cur, target))
            out.append((lo, hi))
            layout[lo - 1], layout[hi - 1] = layout[hi - 1], layout[lo - 1]
    return out


def embed_nary(gate: GateSpec, positions: Sequence[int], k: int) -> np.ndarray:
    """Gate on any list of distinct wires, listed in input order.

    Builds the wire permutation as a product of :func:`swap_pair` factors
    that brings the listed wires, in order, to the slots starting at the
    smallest listed wire, and conjugates the adjacent embedding with it.
    """
    d = gate.d
    _check_register(k, d)
    pos = validate_positions(positions, k)
    if len(pos) != gate.arity:
        raise PlacementError(f"gate {gate.name!r} has arity {gate.arity} but {len(pos)} positions were given")
    start = min(pos)
    core = embed_adjacent(gate, start, k)
    if _is_contiguous(pos):
        return core
    perm = None
    for lo, hi in slot_transpositions(pos, k):
        s = swap_pair(k, lo, hi, d)
        perm = s if perm is None else matmul(s, perm)
    return matmul(matmul(dagger(perm), core), perm)


def embed(gate: GateSpec, positions: Sequence[int], k: int) -> np.ndarray:
    """Block-path embedding, picking the cheapest construction."""
    pos = validate_positions(positions, k)
    if len(pos) != gate.arity:
        raise PlacementError(f"gate {gate.name!r} has arity {gate.arity} but {len(pos)} positions were given")
    if _is_contiguous(pos):
        return embed_adjacent(gate, pos[0], k)
    if gate.arity == 2:
        return embed_binary(gate, k, pos[0], pos[1])
    return embed_nary(gate, pos, k)


# -- naive reference ------------------------------------------------------------


def adjacent_swap_schedule(positions: Sequence[int], k: int | None = None) -> list[int]:
    """Adjacent SWAPs used to gather the target wires, in application order.

    Entry ``p`` stands for the SWAP of wires ``p`` and ``p + 1``. Wire
    ``positions[i]`` is bubbled leftwards to slot ``min(positions) + i``.
    Undoing the gathering repeats the list in reverse.
    """
    pos = validate_positions(positions, k if k is not None else max(positions))
    start = min(pos)
    layout = list(range(1, max(pos) + 1))
    schedule = []
    for i, wire in enumerate(pos):
        cur = layout.index(wire) + 1
        while cur > start + i:
            schedule.append(cur - 1)
            layout[cur - 2], layout[cur - 1] = layout[cur - 1], layout[cur - 2]
            cur -= 1
    return schedule


class OracleResult(NamedTuple):
    matrix: np.ndarray
    swaps: int


def swap_chain_oracle(gate: GateSpec, k: int, positions: Sequence[int]) -> OracleResult:
    """Naive construction from adjacent SWAPs and full-size products.

    Returns the operator and the number of adjacent SWAP applications
    (gathering plus restoring).
    """
    d = gate.d
    _check_register(k, d)
    pos = validate_positions(positions, k)
    if len(pos) != gate.arity:
        raise PlacementError(f"gate {gate.name!r} has arity {gate.arity} but {len(pos)} positions were given")
    schedule = adjacent_swap_schedule(pos, k)
    swap = standard_gate("swap", d)
    factors = [embed_adjacent(swap, p, k) for p in schedule]
    core = embed_adjacent(gate, min(pos), k)
    # S_1 ... S_r . G . S_r ... S_1, with S_1 applied first to the state
    chain = factors + [core] + factors[::-1]
    out = chain[0]
    for f in chain[1:]:
        out = matmul(out, f)
    return OracleResult(out, 2 * len(schedule))


def count_adjacent_swaps(positions: Sequence[int]) -> int:
    """Closed-form adjacent SWAP count for strictly increasing positions."""
    pos = [int(p) for p in positions]
    if not pos:
        raise PlacementError("at least one wire position is required")
    if any(b <= a for a, b in zip(pos, pos[1:])):
        raise PlacementError(f"positions must be strictly increasing, got {pos}")
    first = pos[0]
    return 2 * sum(a - (first + i) for i, a in enumerate(pos) if i > 0)


# -- composing two swaps -----------------------------------------------------------


class SwapComposition(NamedTuple):
    matrix: np.ndarray
    fast_path: bool


def compose_swaps(
    k: int,
    d: int,
    pair_a: tuple[int, int],
    pair_b: tuple[int, int],
    path: str = "auto",
) -> SwapComposition:
    """``swap_pair(pair_a) @ swap_pair(pair_b)``.

    The factored path multiplies only inside the window spanned by both
    pairs; it needs ``m_a >= m_b`` and ``q_a - m_a >= q_b - m_b``.
    Otherwise (or with ``path="matmul"``) the two full-size swaps are
    multiplied.
    """
    (m, q), (mb, qb) = pair_a, pair_b
    _check_register(k, d)
    for lo, hi in (pair_a, pair_b):
        if not 1 <= lo < hi <= k:
            raise PlacementError(f"swap pair needs 1 <= m < q <= k, got ({lo}, {hi}) with k={k}")
    if path not in ("auto", "fast", "matmul"):
        raise ValueError(f"path must be 'auto', 'fast' or 'matmul', got {path!r}")
    n, nb = q - m, qb - mb
    eligible = m >= mb and n >= nb
    if path == "fast" and not eligible:
        raise PlacementError(f"factored path needs m >= m' and n >= n', got {pair_a} and {pair_b}")
    if path == "matmul" or not eligible:
        return SwapComposition(matmul(swap_pair(k, m, q, d), swap_pair(k, mb, qb, d)), False)
    shift = m - mb
    a = sandwich(swap_first_last(n + 1, d), d**shift, 1)
    b = sandwich(swap_first_last(nb + 1, d), 1, d ** (shift + n - nb))
    window = matmul(a, b)
    return SwapComposition(sandwich(window, d ** (mb - 1), d ** (k - q)), True)
