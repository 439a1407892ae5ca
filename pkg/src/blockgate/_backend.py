"""Kernel backend selection.

The compiled extension is used when it imports; otherwise the numpy
fallback. ``BLOCKGATE_PURE_PYTHON=1`` forces the fallback at import time,
and :func:`use_backend` switches at runtime (benchmarks, cross-checks).
"""

from __future__ import annotations

import contextlib
import os
from types import ModuleType
from typing import Iterator

from blockgate import _fallback

try:
    from blockgate import _kernels as _compiled
except ImportError:  # extension not built
    _compiled = None

_BACKENDS: dict[str, ModuleType] = {"python": _fallback}
if _compiled is not None:
    _BACKENDS["compiled"] = _compiled

if os.environ.get("BLOCKGATE_PURE_PYTHON", "").strip() not in ("", "0") or _compiled is None:
    _active: ModuleType = _fallback
else:
    _active = _compiled


def available() -> list[str]:
    return sorted(_BACKENDS)


def kernels() -> ModuleType:
    return _active


def name() -> str:
    return _active.NAME


def set_backend(backend: str) -> None:
    global _active
    if backend == "auto":
        backend = "compiled" if "compiled" in _BACKENDS else "python"
    try:
        _active = _BACKENDS[backend]
    except KeyError:
        raise ValueError(
            f"backend {backend!r} is not available (have: {', '.join(available())})"
        ) from None


@contextlib.contextmanager
def use_backend(backend: str) -> Iterator[None]:
    """Temporarily switch the active kernel backend."""
    previous = _active
    set_backend(backend)
    try:
        yield
    finally:
        _set_module(previous)


def _set_module(module: ModuleType) -> None:
    global _active
    _active = module
