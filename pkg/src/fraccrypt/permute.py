"""Key-seeded global permutation built on a SplitMix64 keystream.

SplitMix64 is a determinism device: it makes permutations reproducible
bit for bit across platforms. It is not a cryptographically secure generator.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import PreconditionError

MASK64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15


@dataclass(frozen=True)
class KeystreamState:
    state: int = 0

    def __post_init__(self):
        object.__setattr__(self, "state", self.state & MASK64)


def keystream_next(s: KeystreamState) -> tuple[int, KeystreamState]:
    """One SplitMix64 step; returns the output and the successor state."""
    state = (s.state + GOLDEN_GAMMA) & MASK64
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31), KeystreamState(state)


def keystream(seed: int, count: int, backend: str | None = None) -> np.ndarray:
    """First ``count`` outputs for ``seed`` as uint64 (vectorised twin of keystream_next)."""
    return kernels.impl(backend).splitmix64(seed & MASK64, count)


@dataclass(frozen=True, eq=False)
class Permutation:
    """``mapping[i]`` is the source index that lands at destination ``i``."""

    mapping: np.ndarray

    def __post_init__(self):
        m = np.array(self.mapping, dtype=np.int64).reshape(-1)
        if m.size == 0:
            raise PreconditionError("permutation must have length >= 1")
        if m.min() < 0 or m.max() >= m.size or np.bincount(m, minlength=m.size).max() != 1:
            raise PreconditionError("mapping is not a bijection on [0, n)")
        m.flags.writeable = False
        object.__setattr__(self, "mapping", m)

    @classmethod
    def _trusted(cls, mapping: np.ndarray) -> "Permutation":
        # generator output is a bijection by construction; skip the O(n) check
        self = object.__new__(cls)
        mapping.flags.writeable = False
        object.__setattr__(self, "mapping", mapping)
        return self

    def __len__(self):
        return self.mapping.size

    def __eq__(self, other):
        if not isinstance(other, Permutation):
            return NotImplemented
        return np.array_equal(self.mapping, other.mapping)

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(np.arange(n))


def gen_permutation(seed: int, n: int, backend: str | None = None) -> Permutation:
    """Fisher-Yates shuffle of [0, n) driven by the SplitMix64 stream of ``seed``.

    Step ``i`` runs from n-1 down to 1 and swaps ``i`` with ``next() mod (i+1)``.
    """
    if n < 1:
        raise PreconditionError(f"n must be >= 1, got {n}")
    return Permutation._trusted(kernels.impl(backend).fisher_yates(seed & MASK64, n))


def _check_length(data: np.ndarray, p: Permutation) -> None:
    if data.shape[0] != len(p):
        raise PreconditionError(f"data length {data.shape[0]} != permutation length {len(p)}")


def apply_permutation(data, p: Permutation) -> np.ndarray:
    """``out[i] = data[p.mapping[i]]``."""
    arr = np.asarray(data)
    _check_length(arr, p)
    return arr[p.mapping]


def invert_permutation(data, p: Permutation) -> np.ndarray:
    """``out[p.mapping[i]] = data[i]``; undoes :func:`apply_permutation`."""
    arr = np.asarray(data)
    _check_length(arr, p)
    out = np.empty_like(arr)
    out[p.mapping] = arr
    return out
