"""Encryption and decryption pipelines.

Encryption, per channel::

    split into b x b blocks -> FFT -> Arnold-permute coefficient positions
    -> inverse FFT -> flatten blocks -> global keyed shuffle

Decryption runs the mirror image and rounds the real part back to 8 bits.
Block stages are independent and may run on a thread pool; the shuffle is a
serial barrier, so output is identical for any worker count.
"""
from __future__ import annotations

import hashlib
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from typing import Literal

import numpy as np

from . import spectral
from .container import (
    BLOCK_SIZES,
    COMPLEX_LE,
    MAX_ARNOLD_ITERATIONS,
    EncryptedContainer,
    Mode,
    padded_extent,
)
from .errors import PreconditionError, WrongKeyError
from .fractalmap import ArnoldParams, Direction, gather_table
from .imagecore import ImageBuffer, split_channels
from .permute import MASK64, apply_permutation, gen_permutation, invert_permutation

Transform = Literal["fft", "naive"]


@dataclass(frozen=True)
class CipherParams:
    block_size: int = 32
    arnold_iterations: int = 7
    shuffle_seed: int = 0
    key_fingerprint: bytes = bytes(8)
    mode: Mode = Mode.LOSSLESS

    def __post_init__(self):
        object.__setattr__(self, "mode", Mode(self.mode))
        if self.block_size not in BLOCK_SIZES:
            raise PreconditionError(f"block size must be one of {BLOCK_SIZES}, got {self.block_size}")
        if not 1 <= self.arnold_iterations <= MAX_ARNOLD_ITERATIONS:
            raise PreconditionError(
                f"arnold_iterations must be in [1, {MAX_ARNOLD_ITERATIONS}], got {self.arnold_iterations}"
            )
        if not 0 <= self.shuffle_seed <= MASK64:
            raise PreconditionError("shuffle_seed must fit in 64 bits")
        if len(self.key_fingerprint) != 8:
            raise PreconditionError("key_fingerprint must be 8 bytes")

    @property
    def arnold(self) -> ArnoldParams:
        return ArnoldParams(self.block_size, self.arnold_iterations)


def derive_params(passphrase: bytes | str, block_size: int = 32, mode: Mode | str = Mode.LOSSLESS) -> CipherParams:
    """Key schedule from SHA-256(passphrase).

    Bytes 0-7 give the shuffle seed (little-endian), bytes 8-9 give
    ``k = 1 + (u16 mod 64)`` and bytes 10-17 the key fingerprint.
    """
    if isinstance(passphrase, str):
        passphrase = passphrase.encode("utf-8")
    if not passphrase:
        raise PreconditionError("passphrase must be non-empty")
    digest = hashlib.sha256(passphrase).digest()
    return CipherParams(
        block_size=block_size,
        arnold_iterations=1 + int.from_bytes(digest[8:10], "little") % 64,
        shuffle_seed=int.from_bytes(digest[0:8], "little"),
        key_fingerprint=digest[10:18],
        mode=Mode(mode),
    )


def split_blocks(plane, width: int, height: int, block_size: int) -> np.ndarray:
    """Zero-pad a (height, width) plane to block multiples and cut it into tiles.

    Returns a (n_blocks, b, b) complex128 array with blocks in row-major block
    order and the samples in the real parts.
    """
    if width < 1 or height < 1:
        raise PreconditionError(f"plane dimensions must be >= 1, got {width}x{height}")
    arr = np.asarray(plane).reshape(height, width)
    b = block_size
    ph, pw = padded_extent(height, b), padded_extent(width, b)
    padded = np.zeros((ph, pw), dtype=np.complex128)
    padded.real[:height, :width] = arr
    return np.ascontiguousarray(
        padded.reshape(ph // b, b, pw // b, b).transpose(0, 2, 1, 3).reshape(-1, b, b)
    )


def merge_blocks(blocks, width: int, height: int) -> np.ndarray:
    """Reassemble tiles from :func:`split_blocks` and crop to (height, width)."""
    blocks = np.asarray(blocks)
    b = blocks.shape[-1]
    ph, pw = padded_extent(height, b), padded_extent(width, b)
    if blocks.shape != ((ph // b) * (pw // b), b, b):
        raise PreconditionError(f"block array {blocks.shape} does not tile {width}x{height}")
    full = blocks.reshape(ph // b, pw // b, b, b).transpose(0, 2, 1, 3).reshape(ph, pw)
    return full[:height, :width]


def _transform(re, im, inverse: bool, transform: Transform, backend):
    if transform == "fft":
        return spectral.fft2_parts(re, im, inverse, backend)
    if transform == "naive":
        return spectral.dft2_parts(re, im, inverse, backend)
    raise PreconditionError(f"unknown transform {transform!r}")


def _block_stage(blocks: np.ndarray, params: CipherParams, direction: Direction,
                 transform: Transform, backend) -> np.ndarray:
    b = params.block_size
    re = np.ascontiguousarray(blocks.real)
    im = np.ascontiguousarray(blocks.imag)
    re, im = _transform(re, im, False, transform, backend)
    gather = gather_table(b, params.arnold_iterations, direction)
    nb = re.shape[0]
    re = np.ascontiguousarray(re.reshape(nb, b * b)[:, gather]).reshape(nb, b, b)
    im = np.ascontiguousarray(im.reshape(nb, b * b)[:, gather]).reshape(nb, b, b)
    re, im = _transform(re, im, True, transform, backend)
    out = np.empty(re.shape, dtype=np.complex128)
    out.real = re
    out.imag = im
    return out


def default_workers() -> int:
    try:
        return len(os.sched_getaffinity(0))
    except AttributeError:
        return os.cpu_count() or 1


def _run_blocks(blocks: np.ndarray, params: CipherParams, direction: Direction,
                transform: Transform, workers: int, backend) -> np.ndarray:
    workers = min(workers, blocks.shape[0])
    if workers <= 1:
        return _block_stage(blocks, params, direction, transform, backend)
    chunks = np.array_split(blocks, workers)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        parts = list(pool.map(lambda ch: _block_stage(ch, params, direction, transform, backend), chunks))
    return np.concatenate(parts)


def _check_block(block, params: CipherParams) -> np.ndarray:
    arr = np.asarray(block, dtype=np.complex128)
    b = params.block_size
    if arr.shape != (b, b):
        raise PreconditionError(f"expected a {b}x{b} block, got shape {arr.shape}")
    return arr[None]


def encrypt_block(block, params: CipherParams, transform: Transform = "fft", backend=None) -> np.ndarray:
    """ifft2(arnold_forward(fft2(block))) for one b x b complex block."""
    return _block_stage(_check_block(block, params), params, "forward", transform, backend)[0]


def decrypt_block(block, params: CipherParams, transform: Transform = "fft", backend=None) -> np.ndarray:
    """ifft2(arnold_inverse(fft2(block))); exact inverse of :func:`encrypt_block`."""
    return _block_stage(_check_block(block, params), params, "inverse", transform, backend)[0]


def channel_seed(params: CipherParams, channel: int) -> int:
    return params.shuffle_seed ^ channel


def quantize_magnitude(coefficients: np.ndarray) -> np.ndarray:
    """Render complex ciphertext as bytes: round(255 * |z| / max|z|). Not invertible."""
    mag = np.abs(coefficients)
    peak = mag.max() if mag.size else 0.0
    if peak == 0.0:
        return np.zeros(mag.shape, dtype=np.uint8)
    return np.rint(mag * (255.0 / peak)).astype(np.uint8)


def encrypt_image(img: ImageBuffer, params: CipherParams, *, transform: Transform = "fft",
                  workers: int = 1, backend: str | None = None) -> EncryptedContainer:
    """Encrypt every channel independently and pack the result into a container."""
    chunks = []
    for c, plane in enumerate(split_channels(img)):
        blocks = split_blocks(plane, img.width, img.height, params.block_size)
        coeffs = _run_blocks(blocks, params, "forward", transform, workers, backend).reshape(-1)
        perm = gen_permutation(channel_seed(params, c), coeffs.size, backend)
        shuffled = apply_permutation(coeffs, perm)
        if params.mode is Mode.LOSSLESS:
            chunks.append(shuffled.astype(COMPLEX_LE, copy=False).tobytes())
        else:
            chunks.append(quantize_magnitude(shuffled).tobytes())
    return EncryptedContainer(
        width=img.width,
        height=img.height,
        channels=img.channels,
        block_size=params.block_size,
        arnold_iterations=params.arnold_iterations,
        key_fingerprint=params.key_fingerprint,
        mode=params.mode,
        payload=b"".join(chunks),
    )


def decrypt_image(container: EncryptedContainer, params: CipherParams, *, transform: Transform = "fft",
                  workers: int = 1, backend: str | None = None) -> ImageBuffer:
    """Invert :func:`encrypt_image`; refuses keys whose fingerprint does not match."""
    if params.key_fingerprint != container.key_fingerprint:
        raise WrongKeyError("key fingerprint mismatch")
    if container.mode is not Mode.LOSSLESS:
        raise PreconditionError("quantized containers are a one-way rendering and cannot be decrypted")
    if (params.block_size, params.arnold_iterations) != (container.block_size, container.arnold_iterations):
        raise PreconditionError("cipher parameters disagree with the container header")
    b = container.block_size
    planes = []
    for c in range(container.channels):
        coeffs = np.asarray(container.channel_payload(c), dtype=np.complex128)
        perm = gen_permutation(channel_seed(params, c), coeffs.size, backend)
        blocks = invert_permutation(coeffs, perm).reshape(-1, b, b)
        restored = _run_blocks(blocks, params, "inverse", transform, workers, backend)
        pixels = np.clip(np.rint(restored.real), 0, 255).astype(np.uint8)
        planes.append(merge_blocks(pixels, container.width, container.height))
    return ImageBuffer.from_array(np.stack(planes, axis=-1))


def params_for_container(container: EncryptedContainer, passphrase: bytes | str) -> CipherParams:
    """Derive params for ``container`` from the passphrase alone (b and mode come from the header)."""
    return derive_params(passphrase, container.block_size, container.mode)


def render_quantized(container: EncryptedContainer) -> ImageBuffer:
    """View a quantized container as a padded-size 8-bit image."""
    if container.mode is not Mode.QUANTIZED:
        raise PreconditionError("only quantized containers have a byte rendering")
    planes = [
        container.channel_payload(c).reshape(container.padded_height, container.padded_width)
        for c in range(container.channels)
    ]
    return ImageBuffer.from_array(np.stack(planes, axis=-1))


def quantized_rendering(img: ImageBuffer, params: CipherParams, **kwargs) -> ImageBuffer:
    """Encrypt in quantized mode and return the viewable byte image."""
    return render_quantized(encrypt_image(img, replace(params, mode=Mode.QUANTIZED), **kwargs))
