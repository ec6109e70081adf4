"""Pure-Python/numpy implementations of the hot kernels.

Used when the compiled ``_kernels`` extension is unavailable or when
``FRCT_BACKEND=python`` is set. Every function mirrors the signature and
arithmetic order of its Cython twin so both backends agree bit for bit on
the FFT path.
"""
import numpy as np

_MASK64 = (1 << 64) - 1
_GAMMA = np.uint64(0x9E3779B97F4A7C15)
_MUL1 = np.uint64(0xBF58476D1CE4E5B9)
_MUL2 = np.uint64(0x94D049BB133111EB)


def fft_lines(re, im, wr, wi, rev):
    """In-place iterative radix-2 FFT along the last axis of (L, n) arrays."""
    n = re.shape[1]
    re[:] = re[:, rev]
    im[:] = im[:, rev]
    m = 1
    while m < n:
        step = n // (2 * m)
        twr = wr[::step][:m]
        twi = wi[::step][:m]
        vr = re.reshape(re.shape[0], n // (2 * m), 2, m)
        vi = im.reshape(im.shape[0], n // (2 * m), 2, m)
        er, ei = vr[:, :, 0, :], vi[:, :, 0, :]
        odr, odi = vr[:, :, 1, :], vi[:, :, 1, :]
        tr = twr * odr - twi * odi
        ti = twr * odi + twi * odr
        odr[...] = er - tr
        odi[...] = ei - ti
        er += tr
        ei += ti
        m *= 2


def dft2_direct(re, im, wnr, wni, wmr, wmi):
    """Direct double-sum 2-D DFT of a (B, N, M) batch; returns (re, im).

    Each output bin sums all N*M input terms against the twiddle
    ``wn[u*x mod N] * wm[v*y mod M]``. Work is chunked over ``u`` so the
    (u, v, x, y) kernel stays under ~16 MB.
    """
    _, n, m = re.shape
    wn = wnr + 1j * wni
    wm = wmr + 1j * wmi
    kx = wn[np.outer(np.arange(n), np.arange(n)) % n]
    ky = wm[np.outer(np.arange(m), np.arange(m)) % m]
    f = re + 1j * im
    out = np.empty(f.shape, dtype=np.complex128)
    rows = max(1, (1 << 20) // (m * n * m))
    for u0 in range(0, n, rows):
        u1 = min(n, u0 + rows)
        kernel = kx[u0:u1, None, :, None] * ky[None, :, None, :]
        out[:, u0:u1, :] = np.tensordot(f, kernel, axes=([1, 2], [2, 3]))
    return np.ascontiguousarray(out.real), np.ascontiguousarray(out.imag)


def splitmix64(seed, count):
    """First ``count`` SplitMix64 outputs for ``seed`` as a uint64 array."""
    steps = np.arange(1, count + 1, dtype=np.uint64)
    z = np.uint64(seed & _MASK64) + steps * _GAMMA
    z = (z ^ (z >> np.uint64(30))) * _MUL1
    z = (z ^ (z >> np.uint64(27))) * _MUL2
    return z ^ (z >> np.uint64(31))


def fisher_yates(seed, n):
    stream = splitmix64(seed, n - 1)
    bounds = np.arange(n, 1, -1, dtype=np.uint64)
    js = (stream % bounds).tolist()
    mapping = list(range(n))
    i = n - 1
    for j in js:
        mapping[i], mapping[j] = mapping[j], mapping[i]
        i -= 1
    return np.array(mapping, dtype=np.int64)
