"""Dense complex matrix arithmetic.

Matrices are plain ``numpy.ndarray`` objects of dtype ``complex128``,
2-D and C-contiguous. The helpers here validate shapes, enforce the dense
size guard and route the hot loops to the active kernel backend.
"""

from __future__ import annotations

import json
import math
import os
from typing import Any

import numpy as np

from blockgate import _backend
from blockgate.errors import DimensionError, SizeGuardError

EPS = 1e-10
DEFAULT_MAX_DIM = 2**14

# Below this fraction of nonzeros the zero-skipping kernel beats BLAS.
_SPARSE_FRACTION = 0.05


def max_dim() -> int:
    """Largest admissible matrix side (``BLOCKGATE_MAX_DIM`` overrides)."""
    raw = os.environ.get("BLOCKGATE_MAX_DIM")
    if raw is None or not raw.strip():
        return DEFAULT_MAX_DIM
    value = int(raw)
    if value < 1:
        raise ValueError(f"BLOCKGATE_MAX_DIM must be positive, got {value}")
    return value


def check_side(side: int) -> None:
    limit = max_dim()
    if side > limit:
        raise SizeGuardError(
            f"matrix side {side} exceeds the dense size guard {limit} "
            "(set BLOCKGATE_MAX_DIM to raise it)"
        )


def as_matrix(a: Any) -> np.ndarray:
    """Coerce ``a`` to a finite, C-contiguous complex128 2-D array."""
    arr = np.ascontiguousarray(a, dtype=np.complex128)
    if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
        raise DimensionError(f"expected a non-empty 2-D matrix, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("matrix has non-finite entries")
    check_side(max(arr.shape))
    return arr


def identity(n: int) -> np.ndarray:
    check_side(n)
    return np.eye(n, dtype=np.complex128)


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    a = as_matrix(a)
    b = as_matrix(b)
    check_side(max(a.shape[0] * b.shape[0], a.shape[1] * b.shape[1]))
    return np.kron(a, b)


def kron_all(*factors: np.ndarray) -> np.ndarray:
    out = as_matrix(factors[0])
    for f in factors[1:]:
        out = kron(out, f)
    return out


def _is_sparse(a: np.ndarray) -> bool:
    return np.count_nonzero(a) <= _SPARSE_FRACTION * a.size


def matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Matrix product.

    With the compiled backend, products where either factor is mostly
    zeros (permutations, embedded gates) go through the zero-skipping
    kernel; dense products always use BLAS.
    """
    a = as_matrix(a)
    b = as_matrix(b)
    if a.shape[1] != b.shape[0]:
        raise DimensionError(f"cannot multiply {a.shape[0]}x{a.shape[1]} by {b.shape[0]}x{b.shape[1]}")
    k = _backend.kernels()
    if k.NAME == "compiled" and (_is_sparse(a) or _is_sparse(b)):
        return k.matmul(a, b)
    return a @ b


def dagger(a: np.ndarray) -> np.ndarray:
    return np.ascontiguousarray(as_matrix(a).conj().T)


def _require_square(a: np.ndarray, what: str) -> None:
    if a.shape[0] != a.shape[1]:
        raise DimensionError(f"{what} needs a square matrix, got {a.shape[0]}x{a.shape[1]}")


def unitarity_deviation(a: np.ndarray) -> float:
    """max(|a a^+ - I|, |a^+ a - I|) entrywise."""
    a = as_matrix(a)
    _require_square(a, "unitarity check")
    ad = dagger(a)
    eye = np.eye(a.shape[0], dtype=np.complex128)
    left = np.max(np.abs(matmul(a, ad) - eye))
    right = np.max(np.abs(matmul(ad, a) - eye))
    return float(max(left, right))


def is_unitary(a: np.ndarray, tol: float = EPS) -> bool:
    return unitarity_deviation(a) <= tol


def trace(a: np.ndarray) -> complex:
    a = as_matrix(a)
    _require_square(a, "trace")
    return complex(np.trace(a))


def trace_product(a: np.ndarray, b: np.ndarray) -> complex:
    """``Tr(a @ b)`` without materialising the product."""
    a = as_matrix(a)
    b = as_matrix(b)
    if a.shape[1] != b.shape[0] or a.shape[0] != b.shape[1]:
        raise DimensionError(f"Tr(AB) undefined for {a.shape} and {b.shape}")
    return _backend.kernels().trace_product(a, b)


def max_deviation(a: np.ndarray, b: np.ndarray) -> float:
    a = np.asarray(a)
    b = np.asarray(b)
    if a.shape != b.shape:
        raise DimensionError(f"shape mismatch {a.shape} vs {b.shape}")
    return float(np.max(np.abs(a - b))) if a.size else 0.0


def allclose(a: np.ndarray, b: np.ndarray, tol: float = EPS) -> bool:
    return np.shape(a) == np.shape(b) and max_deviation(a, b) <= tol


def sandwich(m: np.ndarray, left: int, right: int) -> np.ndarray:
    """``I_left (x) m (x) I_right`` assembled without any products."""
    m = as_matrix(m)
    check_side(max(m.shape) * left * right)
    return _backend.kernels().sandwich(m, left, right)


def grid_embed(blocks: np.ndarray, left: int, inner: int, right: int) -> np.ndarray:
    """``I_left (x) G (x) I_right`` with ``G[i, j] = I_inner (x) blocks[i, j]``.

    ``blocks`` has shape ``(g, g, b, b)``.
    """
    blocks = np.ascontiguousarray(blocks, dtype=np.complex128)
    if blocks.ndim != 4 or blocks.shape[0] != blocks.shape[1] or blocks.shape[2] != blocks.shape[3]:
        raise DimensionError(f"block grid must have shape (g, g, b, b), got {blocks.shape}")
    check_side(left * blocks.shape[0] * inner * blocks.shape[2] * right)
    return _backend.kernels().grid_embed(blocks, left, inner, right)


def random_unitary(n: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed unitary from the QR factorisation of a Ginibre matrix."""
    z = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / math.sqrt(2.0)
    q, r = np.linalg.qr(z)
    phases = np.diag(r) / np.abs(np.diag(r))
    return np.ascontiguousarray(q * phases)


# -- matrix JSON --------------------------------------------------------------


def matrix_to_dict(a: np.ndarray) -> dict:
    a = as_matrix(a)
    return {
        "rows": int(a.shape[0]),
        "cols": int(a.shape[1]),
        "entries": [[float(z.real), float(z.imag)] for z in a.ravel()],
    }


def matrix_from_dict(obj: Any) -> np.ndarray:
    if not isinstance(obj, dict):
        raise ValueError("matrix JSON must be an object with rows, cols, entries")
    missing = [key for key in ("rows", "cols", "entries") if key not in obj]
    if missing:
        raise ValueError(f"matrix JSON is missing {', '.join(missing)}")
    rows, cols, entries = obj["rows"], obj["cols"], obj["entries"]
    if not (isinstance(rows, int) and isinstance(cols, int)) or rows < 1 or cols < 1:
        raise ValueError("matrix JSON rows/cols must be positive integers")
    if not isinstance(entries, list) or len(entries) != rows * cols:
        raise ValueError(f"matrix JSON needs {rows * cols} entries, got {len(entries) if isinstance(entries, list) else 'none'}")
    flat = np.empty(rows * cols, dtype=np.complex128)
    for idx, entry in enumerate(entries):
        if isinstance(entry, (int, float)) and not isinstance(entry, bool):
            flat[idx] = float(entry)
        elif isinstance(entry, list) and len(entry) == 2 and all(
            isinstance(x, (int, float)) and not isinstance(x, bool) for x in entry
        ):
            flat[idx] = complex(float(entry[0]), float(entry[1]))
        else:
            raise ValueError(f"matrix JSON entry {idx} must be [re, im]")
    return as_matrix(flat.reshape(rows, cols))


def dumps_matrix(a: np.ndarray) -> str:
    # float repr is the shortest string that round-trips (at most 17 digits)
    return json.dumps(matrix_to_dict(a))


def loads_matrix(text: str) -> np.ndarray:
    return matrix_from_dict(json.loads(text))
