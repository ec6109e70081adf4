"""Backend selection for the hot kernels.

The compiled Cython extension is preferred; the numpy fallback is used when
it is missing or when ``FRCT_BACKEND=python`` is set in the environment.
"""
from __future__ import annotations

import contextlib
import importlib
import os
from functools import lru_cache

import numpy as np

BACKENDS = ("cython", "python")
_MODULES = {"cython": "fraccrypt._kernels", "python": "fraccrypt._pykernels"}


def load_backend(name: str):
    if name not in _MODULES:
        raise ValueError(f"unknown backend {name!r}; choose from {BACKENDS}")
    return importlib.import_module(_MODULES[name])


def available_backends() -> list[str]:
    found = []
    for name in BACKENDS:
        try:
            load_backend(name)
        except ImportError:
            continue
        found.append(name)
    return found


def _initial_backend() -> str:
    requested = os.environ.get("FRCT_BACKEND", "").strip().lower()
    if requested:
        load_backend(requested)
        return requested
    try:
        load_backend("cython")
    except ImportError:
        return "python"
    return "cython"


_active = _initial_backend()


def active_backend() -> str:
    return _active


def set_backend(name: str) -> None:
    global _active
    load_backend(name)
    _active = name


@contextlib.contextmanager
def using(name: str):
    """Temporarily switch the process-wide backend (not thread-safe)."""
    previous = _active
    set_backend(name)
    try:
        yield load_backend(name)
    finally:
        set_backend(previous)


def impl(name: str | None = None):
    return load_backend(name or _active)


@lru_cache(maxsize=None)
def twiddles(n: int, inverse: bool) -> tuple[np.ndarray, np.ndarray]:
    """cos/sin tables e^(-+j2πk/n) for k < n, read-only."""
    angle = 2.0 * np.pi * np.arange(n) / n
    wr = np.cos(angle)
    wi = np.sin(angle) if inverse else -np.sin(angle)
    wr.flags.writeable = False
    wi.flags.writeable = False
    return wr, wi


@lru_cache(maxsize=None)
def bit_reversal(n: int) -> np.ndarray:
    bits = n.bit_length() - 1
    idx = np.arange(n)
    rev = np.zeros(n, dtype=np.intp)
    for b in range(bits):
        rev |= ((idx >> b) & 1) << (bits - 1 - b)
    rev.flags.writeable = False
    return rev
