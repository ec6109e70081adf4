"""Iterated Arnold cat map on square grids.

The map uses the matrix [[1, 1], [1, 2]]:

    (x, y) -> ((x + y) mod N, (x + 2y) mod N)

and its exact inverse [[2, -1], [-1, 1]]. Coordinates are (row, col) of an
N x N grid. Applied to a grid the map moves values between positions and
never alters them.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Literal

import numpy as np

from .errors import PreconditionError

MAX_ITERATIONS = 1024

Direction = Literal["forward", "inverse"]


@dataclass(frozen=True)
class ArnoldParams:
    grid_size: int
    iterations: int
    max_iterations: int = MAX_ITERATIONS

    def __post_init__(self):
        if self.grid_size < 1:
            raise PreconditionError(f"grid_size must be >= 1, got {self.grid_size}")
        if not 0 <= self.iterations <= self.max_iterations:
            raise PreconditionError(
                f"iterations must be in [0, {self.max_iterations}], got {self.iterations}"
            )


def _check_coord(x: int, y: int, n: int) -> None:
    if not (0 <= x < n and 0 <= y < n):
        raise PreconditionError(f"coordinate ({x}, {y}) outside a {n}x{n} grid")


def arnold_forward(x: int, y: int, p: ArnoldParams) -> tuple[int, int]:
    n = p.grid_size
    _check_coord(x, y, n)
    for _ in range(p.iterations):
        x, y = (x + y) % n, (x + 2 * y) % n
    return x, y


def arnold_inverse(x: int, y: int, p: ArnoldParams) -> tuple[int, int]:
    n = p.grid_size
    _check_coord(x, y, n)
    for _ in range(p.iterations):
        x, y = (2 * x - y) % n, (y - x) % n
    return x, y


@lru_cache(maxsize=256)
def destination_table(n: int, k: int, direction: Direction = "forward") -> np.ndarray:
    """Flat destination index of every flat source cell after ``k`` steps."""
    x, y = np.divmod(np.arange(n * n, dtype=np.int64), n)
    if direction == "forward":
        for _ in range(k):
            x, y = (x + y) % n, (x + 2 * y) % n
    elif direction == "inverse":
        for _ in range(k):
            x, y = (2 * x - y) % n, (y - x) % n
    else:
        raise PreconditionError(f"direction must be 'forward' or 'inverse', got {direction!r}")
    dest = x * n + y
    dest.flags.writeable = False
    return dest


@lru_cache(maxsize=256)
def gather_table(n: int, k: int, direction: Direction = "forward") -> np.ndarray:
    """Index array ``g`` such that ``out.flat = in.flat[g]`` applies the map."""
    dest = destination_table(n, k, direction)
    src = np.empty_like(dest)
    src[dest] = np.arange(n * n, dtype=np.int64)
    src.flags.writeable = False
    return src


def arnold_permute_grid(grid, p: ArnoldParams, direction: Direction = "forward") -> np.ndarray:
    """Move every value of an N x N grid (or (B, N, N) batch) to its mapped cell.

    ``output[arnold(x, y)] = input[x, y]`` where ``arnold`` is the forward or
    inverse coordinate map.
    """
    arr = np.asarray(grid)
    n = p.grid_size
    if arr.ndim not in (2, 3) or arr.shape[-2:] != (n, n):
        raise PreconditionError(f"expected a {n}x{n} grid, got shape {arr.shape}")
    flat = arr.reshape(-1, n * n)
    out = flat[:, gather_table(n, p.iterations, direction)]
    return out.reshape(arr.shape)


def arnold_period(n: int) -> int:
    """Smallest k > 0 with [[1,1],[1,2]]^k = I (mod n)."""
    if n < 1:
        raise PreconditionError(f"n must be >= 1, got {n}")
    if n == 1:
        return 1
    a, b, c, d = 1, 1, 1, 2
    k = 1
    while (a % n, b % n, c % n, d % n) != (1, 0, 0, 1):
        a, b, c, d = (a + c) % n, (b + d) % n, (a + 2 * c) % n, (b + 2 * d) % n
        k += 1
    return k
