"""2-D discrete Fourier transforms on complex grids.

Convention: forward transform is unnormalised, the inverse carries 1/(N*M),
with N = rows and M = cols. Every function accepts a single (N, M) grid or a
(B, N, M) batch of equally sized grids and returns a new complex128 array of
the same shape.
"""
from __future__ import annotations

import numpy as np

from . import kernels
from .errors import PreconditionError


def _split(grid) -> tuple[np.ndarray, np.ndarray, tuple[int, ...]]:
    arr = np.asarray(grid)
    if arr.ndim not in (2, 3):
        raise PreconditionError(f"expected a 2-D grid or 3-D batch, got shape {arr.shape}")
    if arr.shape[-1] < 1 or arr.shape[-2] < 1:
        raise PreconditionError(f"grid dimensions must be >= 1, got {arr.shape[-2:]}")
    shape = arr.shape
    batch = arr.reshape(-1, shape[-2], shape[-1])
    re = np.array(batch.real, dtype=np.float64, order="C")
    im = np.array(batch.imag, dtype=np.float64, order="C") if np.iscomplexobj(batch) else np.zeros_like(re)
    return re, im, shape


def _join(re: np.ndarray, im: np.ndarray, shape) -> np.ndarray:
    out = np.empty(re.shape, dtype=np.complex128)
    out.real = re
    out.imag = im
    return out.reshape(shape)


def _scale(re: np.ndarray, im: np.ndarray) -> None:
    s = 1.0 / (re.shape[-2] * re.shape[-1])
    re *= s
    im *= s


def is_power_of_two(n: int) -> bool:
    return n >= 1 and n & (n - 1) == 0


def fft2_parts(re: np.ndarray, im: np.ndarray, inverse: bool = False, backend: str | None = None):
    """Radix-2 transform of a (B, N, M) batch held as separate float arrays.

    ``re`` and ``im`` must be C-contiguous float64; they are consumed and the
    transformed parts are returned.
    """
    nb, n, m = re.shape
    if not (is_power_of_two(n) and is_power_of_two(m)):
        raise PreconditionError(f"fft2 needs power-of-two dimensions, got {n}x{m}")
    k = kernels.impl(backend)
    wr, wi = kernels.twiddles(m, inverse)
    k.fft_lines(re.reshape(nb * n, m), im.reshape(nb * n, m), wr, wi, kernels.bit_reversal(m))
    # columns: transpose so they become contiguous lines
    re = np.ascontiguousarray(re.transpose(0, 2, 1))
    im = np.ascontiguousarray(im.transpose(0, 2, 1))
    wr, wi = kernels.twiddles(n, inverse)
    k.fft_lines(re.reshape(nb * m, n), im.reshape(nb * m, n), wr, wi, kernels.bit_reversal(n))
    re = np.ascontiguousarray(re.transpose(0, 2, 1))
    im = np.ascontiguousarray(im.transpose(0, 2, 1))
    if inverse:
        _scale(re, im)
    return re, im


def dft2_parts(re: np.ndarray, im: np.ndarray, inverse: bool = False, backend: str | None = None):
    """Direct O((N*M)^2) transform of a (B, N, M) batch; no fast path."""
    n, m = re.shape[1:]
    wnr, wni = kernels.twiddles(n, inverse)
    wmr, wmi = kernels.twiddles(m, inverse)
    re, im = kernels.impl(backend).dft2_direct(re, im, wnr, wni, wmr, wmi)
    if inverse:
        _scale(re, im)
    return re, im


def dft2_naive(grid, backend: str | None = None) -> np.ndarray:
    re, im, shape = _split(grid)
    return _join(*dft2_parts(re, im, False, backend), shape)


def idft2_naive(grid, backend: str | None = None) -> np.ndarray:
    re, im, shape = _split(grid)
    return _join(*dft2_parts(re, im, True, backend), shape)


def fft2(grid, backend: str | None = None) -> np.ndarray:
    """Row-column radix-2 Cooley-Tukey FFT; both dimensions must be powers of two."""
    re, im, shape = _split(grid)
    return _join(*fft2_parts(re, im, False, backend), shape)


def ifft2(grid, backend: str | None = None) -> np.ndarray:
    re, im, shape = _split(grid)
    return _join(*fft2_parts(re, im, True, backend), shape)
