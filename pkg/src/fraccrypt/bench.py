"""Benchmark harness: fractal pipeline variants against an AES-CTR baseline.

Each (scheme, size) cell encrypts and decrypts a deterministic synthetic image
``repetitions`` times and reports median wall-clock times plus the fidelity
of the decrypted output.
"""
from __future__ import annotations

import csv
import hashlib
import io
import math
import os
import statistics
from dataclasses import dataclass, fields

import numpy as np

from .errors import PreconditionError
from .imagecore import ImageBuffer
from .metrics import format_value, psnr, ssim, timed
from .pipeline import decrypt_image, default_workers, derive_params, encrypt_image

SCHEMES = ("fractal-naive-dft", "fractal-fft", "fractal-fft-parallel", "aes-ctr-baseline")
FRACTAL_SCHEMES = SCHEMES[:3]


class SchemeUnavailable(RuntimeError):
    pass


@dataclass(frozen=True)
class AesCtrCiphertext:
    width: int
    height: int
    channels: int
    initial_counter: bytes
    data: bytes


def _aes_ctr(key: bytes, counter: bytes):
    try:
        from cryptography.hazmat.primitives.ciphers import Cipher, algorithms, modes
    except ImportError as exc:  # pragma: no cover - depends on environment
        raise SchemeUnavailable("the 'cryptography' package is not installed") from exc
    return Cipher(algorithms.AES(key), modes.CTR(counter))


def aes_ctr_baseline_encrypt(img: ImageBuffer, key: bytes) -> AesCtrCiphertext:
    """AES-128-CTR over the raw samples.

    The counter block is an all-zero 8-byte nonce followed by a fresh random
    64-bit counter base, recorded in the result for decryption.
    """
    if len(key) != 16:
        raise PreconditionError(f"AES-128 needs a 16-byte key, got {len(key)}")
    counter = bytes(8) + os.urandom(8)
    enc = _aes_ctr(key, counter).encryptor()
    data = enc.update(img.samples.tobytes()) + enc.finalize()
    return AesCtrCiphertext(img.width, img.height, img.channels, counter, data)


def aes_ctr_baseline_decrypt(ct: AesCtrCiphertext, key: bytes) -> ImageBuffer:
    if len(key) != 16:
        raise PreconditionError(f"AES-128 needs a 16-byte key, got {len(key)}")
    dec = _aes_ctr(key, ct.initial_counter).decryptor()
    raw = dec.update(ct.data) + dec.finalize()
    return ImageBuffer(ct.width, ct.height, ct.channels, np.frombuffer(raw, dtype=np.uint8))


@dataclass(frozen=True)
class BenchConfig:
    image_sizes: tuple[int, ...] = (256, 512, 1024)
    schemes: tuple[str, ...] = SCHEMES
    repetitions: int = 5
    seed: int = 0
    block_size: int = 32
    channels: int = 1
    passphrase: bytes = b"fraccrypt-bench"

    def __post_init__(self):
        object.__setattr__(self, "image_sizes", tuple(self.image_sizes))
        object.__setattr__(self, "schemes", tuple(self.schemes))
        if self.repetitions < 1:
            raise PreconditionError("repetitions must be >= 1")
        unknown = [s for s in self.schemes if s not in SCHEMES]
        if unknown:
            raise PreconditionError(f"unknown scheme(s): {', '.join(unknown)}")
        small = [s for s in self.image_sizes if s < self.block_size]
        if small:
            raise PreconditionError(f"image sizes {small} are smaller than block size {self.block_size}")


@dataclass
class BenchRow:
    scheme: str
    image_size: int
    encrypt_seconds: float | None
    decrypt_seconds: float | None
    psnr_db: float | None
    ssim: float | None
    status: str = "ok"


def synthetic_image(size: int, seed: int, channels: int = 1) -> ImageBuffer:
    """Smooth diagonal gradient plus seeded Gaussian noise, one phase per channel."""
    rng = np.random.default_rng(seed)
    y, x = np.mgrid[0:size, 0:size] / max(size - 1, 1)
    planes = []
    for c in range(channels):
        base = 127.5 + 100.0 * np.sin(2.0 * np.pi * (x + 0.5 * y) + c * 2.0 * np.pi / 3.0)
        planes.append(base + rng.normal(0.0, 12.0, size=(size, size)))
    return ImageBuffer.from_array(np.clip(np.rint(np.stack(planes, axis=-1)), 0, 255).astype(np.uint8))


def _fractal_adapter(cfg: BenchConfig, transform: str, workers: int):
    params = derive_params(cfg.passphrase, cfg.block_size)
    return (
        lambda img: encrypt_image(img, params, transform=transform, workers=workers),
        lambda ct: decrypt_image(ct, params, transform=transform, workers=workers),
    )


def _aes_adapter(cfg: BenchConfig):
    key = hashlib.sha256(cfg.passphrase).digest()[:16]
    _aes_ctr(key, bytes(16))  # probe availability
    return (lambda img: aes_ctr_baseline_encrypt(img, key), lambda ct: aes_ctr_baseline_decrypt(ct, key))


def make_adapter(scheme: str, cfg: BenchConfig):
    """Return ``(encrypt, decrypt)`` callables or raise SchemeUnavailable."""
    if scheme == "fractal-naive-dft":
        return _fractal_adapter(cfg, "naive", 1)
    if scheme == "fractal-fft":
        return _fractal_adapter(cfg, "fft", 1)
    if scheme == "fractal-fft-parallel":
        return _fractal_adapter(cfg, "fft", default_workers())
    if scheme == "aes-ctr-baseline":
        return _aes_adapter(cfg)
    raise SchemeUnavailable(f"no adapter registered for {scheme!r}")


def run_cell(scheme: str, size: int, cfg: BenchConfig) -> BenchRow:
    try:
        encrypt, decrypt = make_adapter(scheme, cfg)
    except SchemeUnavailable as exc:
        return BenchRow(scheme, size, None, None, None, None, status=f"skipped: {exc}")
    img = synthetic_image(size, cfg.seed, cfg.channels)
    enc_times, dec_times = [], []
    restored = None
    for _ in range(cfg.repetitions):
        ct, t_enc = timed(encrypt, img)
        restored, t_dec = timed(decrypt, ct)
        enc_times.append(t_enc)
        dec_times.append(t_dec)
    return BenchRow(
        scheme,
        size,
        statistics.median(enc_times),
        statistics.median(dec_times),
        psnr(img, restored),
        ssim(img, restored),
    )


def run_bench(cfg: BenchConfig, progress=None) -> list[BenchRow]:
    """One row per (scheme, size), scheme-major, cells run one at a time."""
    rows = []
    for scheme in cfg.schemes:
        for size in cfg.image_sizes:
            row = run_cell(scheme, size, cfg)
            if progress is not None:
                progress(row)
            rows.append(row)
    return rows


COLUMNS = tuple(f.name for f in fields(BenchRow))
_MD_HEADERS = ("Method", "Image Size", "Encryption Time (s)", "Decryption Time (s)", "PSNR (dB)", "SSIM", "Status")


def _md_number(value, digits: int) -> str:
    if value is None:
        return "-"
    if math.isinf(value):
        return "inf"
    return f"{value:.{digits}f}"


def emit_table(rows: list[BenchRow], fmt: str = "markdown") -> str:
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(COLUMNS)
        for r in rows:
            writer.writerow(["" if getattr(r, c) is None else format_value(getattr(r, c)) for c in COLUMNS])
        return buf.getvalue()
    if fmt == "markdown":
        lines = ["| " + " | ".join(_MD_HEADERS) + " |", "|" + "---|" * len(_MD_HEADERS)]
        for r in rows:
            cells = [
                r.scheme,
                f"{r.image_size} x {r.image_size}",
                _md_number(r.encrypt_seconds, 4),
                _md_number(r.decrypt_seconds, 4),
                _md_number(r.psnr_db, 2),
                _md_number(r.ssim, 4),
                r.status,
            ]
            lines.append("| " + " | ".join(cells) + " |")
        return "\n".join(lines) + "\n"
    raise PreconditionError(f"unknown table format {fmt!r}")


def parse_csv(text: str) -> list[BenchRow]:
    """Inverse of ``emit_table(rows, "csv")``."""

    def num(s):
        return None if s == "" else float(s)

    reader = csv.DictReader(io.StringIO(text))
    return [
        BenchRow(
            scheme=rec["scheme"],
            image_size=int(rec["image_size"]),
            encrypt_seconds=num(rec["encrypt_seconds"]),
            decrypt_seconds=num(rec["decrypt_seconds"]),
            psnr_db=num(rec["psnr_db"]),
            ssim=num(rec["ssim"]),
            status=rec["status"],
        )
        for rec in reader
    ]
